#pragma once

// Reference values computed once with mpmath (40 digits) and scipy, then frozen.
namespace oracle {

inline constexpr double kZeta3 = 1.2020569031595942854;
inline constexpr double kZeta4 = 1.0823232337111381915;
inline constexpr double kZeta32 = 2.6123753486854883433;
inline constexpr double kZeta52 = 1.3414872572509171798;
inline constexpr double kF10 = -3.3509970708416191445;
inline constexpr double kBeta0Omega1 = 1.0632653853163684823;
inline constexpr double kF0Condensed = -0.052926149134194124417;
inline constexpr double kGasBeta = 0.8506123082530947858;
inline constexpr double kGasMu = -0.66845308192239697913;
inline constexpr double kGasF = -1.79381502161562892;
inline constexpr double kPolylogT[] = {1.0e-6, 0.001, 0.1, 0.5, 0.69, 0.7, 2.0, 10.0};
// rows: s = 1/2, 3/2, 5/2, 3, 4
inline constexpr double kPolylogTable[5][8] = {
    {1770.9934966045926527, 54.589765528650657287, 4.1652965033465875029, 1.1468661004199864209, 0.81038314528581606407, 0.7969709235739580291, 0.14990840697761236178, 0.00004540138727221673072},
    {2.6088319013380821778, 2.501735774927474756, 1.6363774078085014727, 0.81049045232672917277, 0.62738073643244860762, 0.61934423868643000414, 0.14233433763743575776, 0.000045400658508345883158},
    {1.3414846472381101183, 1.3389488849758425679, 1.1477157068692658246, 0.69256050577005267195, 0.5569677528955073713, 0.55073423978677718388, 0.13874344550611526547, 0.000045400294132413775614},
    {1.2020552582331851925, 1.2004161730537154111, 1.0566594080624260713, 0.66393310054482767174, 0.53904904760087182248, 0.53323942644540153185, 0.13772217964956796447, 0.000045400187410153509022},
    {1.0823220316550574963, 1.0811219978181430867, 0.96965081760264444345, 0.63299613494062901967, 0.51917265567070529323, 0.51381127090903726714, 0.13651200070391419371, 0.000045400058585741532636},
};
inline constexpr double kRho0FourierCritical[3][2] = {{0, 0.063493635934240969786}, {0.5, 0.051455782122134976522}, {2, 0.0038715566972762800903}};
inline constexpr double kRho0FourierGas[3][2] = {{0, 0.063493635934240969786}, {0.5, 0.047969946377683855145}, {2, 0.0011508519252728011923}};

// Mean-field shift for v(r) = exp(-r^2/2) at omega = 2, from a 2D (p, r) scipy quadrature
// with the Gaussian-series form of v*rho_0.
inline constexpr double kXi2D = 0.036506590491919115;

// Ideal gas at omega = 2, beta omega = 2 zeta(3)^{1/3}, hbar = N^{-1/3}: exact occupation sum
// over oscillator shells. Columns: N, N0/N, Husimi-ray discrepancy against the semiclassical
// Bose factor (48 Gauss-Legendre nodes on s in [0, sqrt(25/beta)], weight s^5).
inline constexpr double kIdealFiniteN[4][3] = {
    {1024, 0.8147149786669337, 0.5052933510468159},
    {4096, 0.837585929228461, 0.30873975135685805},
    {16384, 0.8518634288643481, 0.18885128136775808},
    {65536, 0.8606766280542675, 0.1161088527923081},
};

}  // namespace oracle
