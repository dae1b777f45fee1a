#pragma once

// Reference constants frozen from an independent high-precision run
// (adaptive Gauss-Legendre quadrature and zeta/Gamma evaluations in a
// separate arbitrary-precision system, 60 significant digits working
// precision).  Tests compare library enclosures against these strings.

namespace refvals {

// integral_1^inf t^{-3/4} e^{-pi t} dt
inline constexpr const char* kExpPiQuarterIntegral =
    "0.01151662438300025610181725644757127304313999839607306";

// integral_1^inf t^{-3/4} sum_{k=1}^{10} e^{-pi k^2 t} dt
inline constexpr const char* kF0TenTerms =
    "0.01151688724674356034890504125840912077082556176917926";

// F(0) and F(2) with the full theta sum
inline constexpr const char* kF0 =
    "0.01151688724674356034890504125840912077082556176917926";
inline constexpr const char* kF2 =
    "0.0009892828534669306009632963069771404329297552123111846";

inline constexpr const char* kZetaHalf =
    "-1.460354508809586812889499152515298012467229331012581";
inline constexpr const char* kGammaQuarter =
    "3.625609908221908311930685155867672002995167682880065";
inline constexpr const char* kXiHalf =
    "0.4971207781883141099127737396853977198072936095577052";

// Taylor coefficients of xi(1/2 + z) in the j!-normalized convention,
// obtained from high-order derivatives of the zeta/Gamma product form
// (independent of any theta integral).
inline constexpr const char* kGamma1 =
    "0.0114859721575727187676249382488160851322965069";
inline constexpr const char* kGamma2 =
    "0.000246904036140636013780691582989702276271986993";
inline constexpr const char* kGamma5 =
    "1.75392309121331530348945713318414668286235413e-9";
inline constexpr const char* kGamma10 =
    "2.04042256128767744809320225952854797405077454e-18";

// positive roots of L (pi e^L + 3/4) = M, bisection oracle
inline constexpr const char* kL10 =
    "1.038739609038376321450716788061067178008139322005968";
inline constexpr const char* kL2 =
    "0.3756575979139428368525100393132848118200944297695335";

} // namespace refvals
