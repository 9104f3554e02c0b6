#pragma once

#include <span>

#include "evokit/matrix.hpp"

namespace evokit {

// Operator functions built from sums of nested ad-chains over integer
// compositions. Lists are 1-based in the math and 0-based here: z[k-1] is
// the order-k coefficient.

/// scriptG_n(X; Z_1..Z_n) = sum_{m=1}^{n} (i^m / m!) sum_{k_1+...+k_m = n}
/// ad_{Z_{k_1}} ... ad_{Z_{k_m}} X, with n = z.size().
Mat script_G(const Mat& x, std::span<const Mat> z);

/// bigG_n(H_0..H_n; Z_1..Z_{n-1}) for n = z.size() + 1 >= 2. `h` holds the
/// n+1 operators H_0..H_n. The single-chain ad_{Z_n} H_0 term is never formed
/// (it cancels against -i[Z_n, H_0] identically), so the result does not
/// reference any Z_n.
Mat big_G(std::span<const Mat> h, std::span<const Mat> z);

/// scriptR_n^sign(X; Y_1..Y_n) = sum_{m=1}^{n} ((sign*i)^m / (m+1)!)
/// sum_{compositions} ad-chain X, with n = y.size(); sign is +1 or -1.
Mat script_R(int sign, const Mat& x, std::span<const Mat> y);

/// bigR_n^sign = sign * sum_{m=1}^{n-1} scriptR_{n-m}^sign(X_m; Y_1..Y_{n-m}),
/// with n = x.size() + 1 >= 2.
Mat big_R(int sign, std::span<const Mat> x, std::span<const Mat> y);

/// scriptB_n^sign(X; Y_1..Y_n) = -sign * sum_{m=1}^{n} ((sign*i)^m beta_m / m!)
/// sum_{compositions} ad-chain X. Equals (i/2) ad_{Y_n} X plus the even
/// Bernoulli tail sign * sum |beta_2m|/(2m)! ad-chains.
Mat script_B(int sign, const Mat& x, std::span<const Mat> y);

/// bigB_n^sign = sum_{m=1}^{n-1} scriptB_{n-m}^sign(X_m; Y_1..Y_{n-m}).
Mat big_B(int sign, std::span<const Mat> x, std::span<const Mat> y);

/// bigB_n(X; Xi; Z) = bigB_n^-(X; Z) + bigB_n^+(Xi; Z), the mixed function of
/// the coupled time-dependent recursion.
Mat big_B_mixed(std::span<const Mat> x, std::span<const Mat> xi, std::span<const Mat> z);

}  // namespace evokit
