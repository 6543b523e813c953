#pragma once

#include <string>

#include "cosshell/errors.hpp"

namespace cosshell {

/// Isotropic Cosserat material constants (SI units).
struct MaterialConstants {
    double mu = 1.0;     // shear modulus [Pa]
    double lambda = 1.0; // Lame constant [Pa]
    double mu_c = 1.0;   // Cosserat couple modulus [Pa]
    double L_c = 1.0;    // internal length [m]
    double b1 = 1.0, b2 = 1.0, b3 = 1.0; // curvature coefficients [-]
    double h = 0.01;     // shell thickness [m]

    double kappa() const { return (3.0 * lambda + 2.0 * mu) / 3.0; }

    /// mu_c = 0 is accepted but leaves the in-plane energy only positive
    /// semi-definite (zero transverse shear stiffness).
    bool positive_definite() const { return mu_c > 0.0; }

    void validate() const
    {
        if (!(mu > 0.0)) throw Error("material: mu must be > 0");
        if (!(3.0 * lambda + 2.0 * mu > 0.0)) throw Error("material: 3*lambda + 2*mu must be > 0");
        if (!(mu_c >= 0.0)) throw Error("material: mu_c must be >= 0");
        if (!(b1 > 0.0 && b2 > 0.0 && b3 > 0.0)) throw Error("material: b1, b2, b3 must be > 0");
        if (!(L_c > 0.0)) throw Error("material: L_c must be > 0");
        if (!(h > 0.0)) throw Error("material: h must be > 0");
    }
};

/// Transverse-shear weighting of the areal energy: the model's harmonic
/// coefficient 2 mu mu_c / (mu + mu_c), or the arithmetic (mu + mu_c)/2
/// used by the companion model, kept as a comparison flag.
enum class ShearVariant { harmonic, arithmetic };

inline double shear_coefficient(const MaterialConstants& m, ShearVariant v)
{
    return v == ShearVariant::harmonic ? 2.0 * m.mu * m.mu_c / (m.mu + m.mu_c)
                                       : 0.5 * (m.mu + m.mu_c);
}

inline ShearVariant parse_variant(const std::string& s)
{
    if (s == "harmonic") return ShearVariant::harmonic;
    if (s == "arithmetic") return ShearVariant::arithmetic;
    throw SchemaError("unknown variant '" + s + "' (expected harmonic|arithmetic)");
}

inline std::string to_string(ShearVariant v)
{
    return v == ShearVariant::harmonic ? "harmonic" : "arithmetic";
}

} // namespace cosshell
