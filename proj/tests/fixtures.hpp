#pragma once

// Reference values produced by tests/oracles/generate_fixtures.py (mpmath,
// 30 digits) straight from the integral definitions.

namespace mixedlap::fixtures {

// (int (1 - cos z_1) / |z|^{N+2s} dz)^{-1}
inline constexpr double kCns_1_050 = 0.31830988618379067154;
inline constexpr double kCns_2_050 = 0.15915494309189533577;
inline constexpr double kCns_1_025 = 0.19947114020071633897;
inline constexpr double kCns_1_075 = 0.29920671030107450845;
inline constexpr double kCns_3_030 = 0.058593562451505895164;
inline constexpr double kCns_2_090 = 0.10084985986148906277;

// Nonlocal stiffness entries on the n = 9 mesh of (-1, 1) (h = 0.2), keyed by
// the node offset |i - j|.
inline constexpr double kA_050_d0 = 0.88254240061060637359;
inline constexpr double kA_050_d4 = -0.021270318631222539828;
inline constexpr double kA_050_d8 = -0.0050531813964905972531;
inline constexpr double kA_025_d0 = 0.31531025317008594505;
inline constexpr double kA_025_d1 = -0.0037071463244540365623;
inline constexpr double kA_025_d2 = -0.039270101435582227922;
inline constexpr double kA_025_d5 = -0.0081883994415639756769;
inline constexpr double kA_075_d0 = 2.7869752274276858155;
inline constexpr double kA_075_d1 = -1.0495929903097782293;
inline constexpr double kA_075_d2 = -0.22117555641787021618;
inline constexpr double kA_075_d5 = -0.012723300766748968092;

// (-Delta)^s x_+^alpha evaluated at x = 1.
inline constexpr double kKappa_a100_s075 = -0.39894228040143267372;
inline constexpr double kKappa_a120_s090 = -0.42253461079871892816;
inline constexpr double kKappa_a100_s090 = -0.11451731862382133674;
inline constexpr double kKappa_a150_s090 = -1.2039034943702515494;

}  // namespace mixedlap::fixtures
