#pragma once

// Public-message geometry. The public layers (U1, U2) form one multiple-access
// channel at each receiver, with both private layers acting as noise, and must
// be decodable at both: their rate pair lies in the intersection of the two
// MAC pentagons.
//
// Naming of the corner rates follows the receiver index in parentheses:
//   r1_plus_k  = I(U1; Yk | U2)   (U1 decoded after U2)
//   r1_minus_k = I(U1; Yk)        (U1 decoded first, U2 as noise)
// and likewise for user 2.

#include <string_view>
#include <vector>

#include "gic_region/gic_core.hpp"
#include "gic_region/polygon.hpp"

namespace gic {

struct MacCorners {
  double r1_plus_1 = 0.0;
  double r1_minus_1 = 0.0;
  double r1_plus_2 = 0.0;
  double r1_minus_2 = 0.0;
  double r2_plus_2 = 0.0;
  double r2_minus_2 = 0.0;
  double r2_plus_1 = 0.0;
  double r2_minus_1 = 0.0;
  double sum_y1 = 0.0;
  double sum_y2 = 0.0;
};

enum class MacCaseId { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

struct MacCase {
  MacCaseId id = MacCaseId::Case1;
  bool requires_joint_decoding_y1 = false;
};

enum class DecodingOrder { U1ThenU2, U2ThenU1, Joint };

/// Which upper bound on r_u2 is tight at the selected public pair.
enum class PublicBound { R2PlusAtY1, JointSumAtY1, R2MinusAtY2 };

struct DecodingDescriptor {
  DecodingOrder at_y1 = DecodingOrder::U1ThenU2;
  DecodingOrder at_y2 = DecodingOrder::U2ThenU1;
  std::vector<PublicBound> binding;
};

struct PublicRatePair {
  double r_u1 = 0.0;
  double r_u2 = 0.0;
  DecodingDescriptor decoding;
};

enum class Receiver { Y1, Y2, Both };

struct SumRateFront {
  double r_sum = 0.0;
  Receiver binding_receiver = Receiver::Y1;
  double rho_s = 0.0;
  double theta_s = 0.0;
};

MacCorners corner_rates(const ChannelParams& ch, const PowerSplit& split);

/// Case 1: r1_minus_1 >= r1_plus_2 and r2_minus_2 >= r2_plus_1,
/// Case 2: r1_minus_1 <= r1_plus_2 and r2_minus_2 >= r2_plus_1,
/// Case 3: r1_minus_1 >= r1_plus_2 and r2_minus_2 <= r2_plus_1,
/// Case 4: otherwise. Equalities go to the lower-numbered case.
MacCase classify(const MacCorners& corners);

/// r1_plus_2 >= r1_minus_1  <=>  theta >= threshold_theta(ch).
double threshold_theta(const ChannelParams& ch);
/// r2_plus_1 >= r2_minus_2  <=>  rho >= threshold_rho(ch).
double threshold_rho(const ChannelParams& ch);

/// Optimal public pair for weights mu <= 1: r_u1 = r1_plus_2 and r_u2 as large
/// as both MACs then allow.
PublicRatePair public_rate_pair(const ChannelParams& ch, const PowerSplit& split);
PublicRatePair public_rate_pair(const MacCorners& corners);

/// Vertices of the intersection of the two MAC regions, counterclockwise from
/// the origin, deduplicated at 1e-12.
std::vector<Vertex> intersection_polygon(const MacCorners& corners);

/// Sum-rate front with the private powers pinned at (T1, T2). Throws
/// RegimeError when P1 < T1 or P2 < T2.
SumRateFront sum_rate_front(const ChannelParams& ch);

std::string_view to_string(MacCaseId id);
std::string_view to_string(DecodingOrder order);
std::string_view to_string(PublicBound bound);
std::string_view to_string(Receiver receiver);

}  // namespace gic
