#pragma once

// Reference values frozen from high-precision evaluation (40-digit working
// precision, printed to 17 significant digits).  omega values come from the
// polylog identity omega(x, a) = 2 Re Li_a(e^{2 pi i x}); squared errors from
// the exact product identity evaluated in extended precision.

namespace oracle {

inline constexpr double zeta_1_5 = 2.6123753486854883;
inline constexpr double zeta_2 = 1.6449340668482264;
inline constexpr double zeta_3 = 1.2020569031595943;
inline constexpr double zeta_4 = 1.0823232337111382;
inline constexpr double zeta_6 = 1.0173430619844491;
inline constexpr double zeta_12 = 1.0002460865533080;

inline constexpr double omega_0_a2 = 3.2898681336964529;          // 2 zeta(2)
inline constexpr double omega_quarter_a2 = -0.41123351671205661;  // -pi^2/24
inline constexpr double omega_half_a2 = -1.6449340668482264;      // -pi^2/6
inline constexpr double omega_quarter_a4 = -0.11837910368715574;
inline constexpr double omega_eighth_a6 = 1.4117156280506560;
inline constexpr double omega_p3_a15 = -0.91013385901470527;      // x=0.3, alpha=1.5

// squared errors at N=8, alpha=2, gamma=1 unless noted
inline constexpr double e2_z1_n8 = 0.051404189589007076;  // pi^2/192
inline constexpr double e2_z13_n8 = 1.0804929408799700;
inline constexpr double e2_z15_n8 = 1.0804929408799700;
inline constexpr double e2_z17_n8 = 2.6025099882862581;
inline constexpr double e2_z135_n8 = 3.7582125727085972;  // gamma = (1, 0.75, 0.5)
inline constexpr double e2_z12_n9 = 1.0858569015332506;
inline constexpr double e2_z1_n8_a4 = 0.00052847814146051670;  // 2 zeta(4)/8^4
inline constexpr double e2_z13_n8_a15 = 3.6514323092278382;    // alpha = 1.5

// truncated dual sum, N=8, z=1, H=80: (1/32) sum_{t<=10} t^-2
inline constexpr double dual_z1_n8_h80 = 0.048430241598954397;

// d=1 bounds at b=2, m=3, alpha=2, gamma=1, w=0, no exclusions, lambda=1
inline constexpr double thm1_d1 = 1.0724670334241132;  // (1 + 2 zeta(2))/4
inline constexpr double thm2_d1 = 1.8949340668482264;  // 1/4 + zeta(2)

}  // namespace oracle
