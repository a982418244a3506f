#pragma once
// Taylor tables for the Riemann-Siegel correction functions C0..C4,
// expanded in z = 2p - 1 where p is the fractional part of sqrt(t/2pi).
// Generated at 60-digit working precision; truncation below 1e-18 on |z|<=1.

namespace zll::detail {

inline constexpr int kRsSeriesLen = 41;

inline constexpr double kRsC0[kRsSeriesLen] = {
    0.38268343236508977,
    0.0,
    0.43724046807752045,
    0.0,
    0.13237657548034352,
    0.0,
    -0.013605026047674189,
    0.0,
    -0.013567621970103581,
    0.0,
    -0.0016237253231444653,
    0.0,
    0.00029705353733379691,
    0.0,
    7.9433008795214696e-5,
    0.0,
    4.6556124614504505e-7,
    0.0,
    -1.4327251630955106e-6,
    0.0,
    -1.0354847112312946e-7,
    0.0,
    1.2357927083861738e-8,
    0.0,
    1.7881083857954905e-9,
    0.0,
    -3.3914143899270359e-11,
    0.0,
    -1.6326633902565905e-11,
    0.0,
    -3.7851093185412204e-13,
    0.0,
    9.3274232592017248e-14,
    0.0,
    5.2218430159781369e-15,
    0.0,
    -3.3506730727442638e-16,
    0.0,
    -3.4124265228117265e-17,
    0.0,
    5.7512033414323992e-19,
};

inline constexpr double kRsC1[kRsSeriesLen] = {
    0.0,
    -0.026825102628375347,
    0.0,
    0.013784773426351853,
    0.0,
    0.038491250482235082,
    0.0,
    0.0098710662990620765,
    0.0,
    -0.0033107597608584043,
    0.0,
    -0.0014647808577954151,
    0.0,
    -1.3207940624876964e-5,
    0.0,
    5.9227487018471413e-5,
    0.0,
    5.9802425853734486e-6,
    0.0,
    -9.6413224561698264e-7,
    0.0,
    -1.8334733722714412e-7,
    0.0,
    4.4670875627178336e-9,
    0.0,
    2.7096350821772743e-9,
    0.0,
    7.7852886543158510e-11,
    0.0,
    -2.3437626010893689e-11,
    0.0,
    -1.5830172789987522e-12,
    0.0,
    1.2119941573723791e-13,
    0.0,
    1.4583781161108307e-14,
    0.0,
    -2.8786305258131918e-16,
    0.0,
    -8.6628629021237241e-17,
    0.0,
};

inline constexpr double kRsC2[kRsSeriesLen] = {
    0.0051885428302931685,
    0.0,
    0.00030946583880634746,
    0.0,
    -0.011335941078229373,
    0.0,
    0.0022330457419581448,
    0.0,
    0.0051966374088623302,
    0.0,
    0.00034399144076208337,
    0.0,
    -0.00059106484274705828,
    0.0,
    -0.00010229972547935857,
    0.0,
    2.0888392216992755e-5,
    0.0,
    5.9276654930965360e-6,
    0.0,
    -1.6423838362436276e-7,
    0.0,
    -1.5161199700940683e-7,
    0.0,
    -5.9078036982066680e-9,
    0.0,
    2.0911514859478189e-9,
    0.0,
    1.7815649583292351e-10,
    0.0,
    -1.6164072455353831e-11,
    0.0,
    -2.3806962496667616e-12,
    0.0,
    5.3982652955425949e-14,
    0.0,
    1.9750142196969515e-14,
    0.0,
    2.3332868732882635e-16,
    0.0,
    -1.1187517610048080e-16,
};

inline constexpr double kRsC3[kRsSeriesLen] = {
    0.0,
    -0.0013397160907194569,
    0.0,
    0.0037442151363793937,
    0.0,
    -0.0013303178919321468,
    0.0,
    -0.0022654660765471787,
    0.0,
    0.00095484999985067304,
    0.0,
    0.00060100384589636039,
    0.0,
    -0.00010128858286776622,
    0.0,
    -6.8657334492998256e-5,
    0.0,
    5.9853667915385982e-7,
    0.0,
    3.3316598512399471e-6,
    0.0,
    2.1919289102435081e-7,
    0.0,
    -7.8908842456814944e-8,
    0.0,
    -9.4146850812952622e-9,
    0.0,
    9.5701162108834803e-10,
    0.0,
    1.8763137453470663e-10,
    0.0,
    -4.4378376793233993e-12,
    0.0,
    -2.2426738505617353e-12,
    0.0,
    -3.6276868657352437e-14,
    0.0,
    1.7639809550821582e-14,
    0.0,
    7.9607652467867778e-16,
    0.0,
};

inline constexpr double kRsC4[kRsSeriesLen] = {
    0.00046483389361763382,
    0.0,
    -0.0010056607365340471,
    0.0,
    0.00024044856573725793,
    0.0,
    0.0010283086149702322,
    0.0,
    -0.00076578610717556442,
    0.0,
    -0.00020365286803084818,
    0.0,
    0.00023212290491068728,
    0.0,
    3.2602144243865198e-5,
    0.0,
    -2.5579062517949525e-5,
    0.0,
    -4.1074644389157448e-6,
    0.0,
    1.1781113640371294e-6,
    0.0,
    2.4456561422484579e-7,
    0.0,
    -2.3915824767344322e-8,
    0.0,
    -7.5052142070357553e-9,
    0.0,
    1.3312279416258428e-10,
    0.0,
    1.3440626754225620e-10,
    0.0,
    3.5137700424304859e-12,
    0.0,
    -1.5191544533703919e-12,
    0.0,
    -8.9154176814470873e-14,
    0.0,
    1.1195891165228536e-14,
    0.0,
    1.0516013329914815e-15,
};

}  // namespace zll::detail
