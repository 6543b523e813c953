#pragma once

#include <vector>

#include "cosshell/geometry.hpp"

namespace cosshell {

/// Rectangular node lattice over the parameter domain; u cycles fastest.
struct Grid2D {
    Domain dom;
    int nu = 0, nv = 0;

    double du() const { return (dom.u1 - dom.u0) / (nu - 1); }
    double dv() const { return (dom.v1 - dom.v0) / (nv - 1); }
    int count() const { return nu * nv; }
    int index(int i, int j) const { return j * nu + i; }
    double u(int i) const { return dom.u0 + i * du(); }
    double v(int j) const { return dom.v0 + j * dv(); }
    bool boundary(int i, int j) const { return i == 0 || j == 0 || i == nu - 1 || j == nv - 1; }

    void validate() const
    {
        if (nu < 3 || nv < 3)
            throw GridTooSmall("grid needs at least 3 nodes per direction");
    }
};

using FrameField = std::vector<FramePtr>;

FrameField evaluate_frames(const Chart& chart, const Grid2D& grid);

/// Boundary closure of the nodal first-derivative operator. The public
/// strain measures use the 2nd-order one-sided rows. The solver uses the
/// first-order rows, which together with the trapezoidal weights form a
/// summation-by-parts pair: the interior stationarity equations then match
/// the central-difference equilibrium residual without boundary-layer
/// artifacts.
enum class BoundaryClosure { second_order, sbp };

/// One-dimensional stencil of the first derivative: central inside,
/// one-sided at the two edge nodes.
struct FieldStencil {
    int offset[3];
    double coeff[3];
};

FieldStencil field_d1(int n, int i, double h, BoundaryClosure closure = BoundaryClosure::second_order);

/// Nodal partial derivatives f,_alpha of a per-node field.
template <class T>
std::array<std::vector<T>, 2> grid_partials(const Grid2D& g, const std::vector<T>& field,
                                            BoundaryClosure closure = BoundaryClosure::second_order)
{
    g.validate();
    std::array<std::vector<T>, 2> out;
    out[0].resize(g.count());
    out[1].resize(g.count());
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const FieldStencil su = field_d1(g.nu, i, g.du(), closure);
            const FieldStencil sv = field_d1(g.nv, j, g.dv(), closure);
            T fu = su.coeff[0] * field[g.index(i + su.offset[0], j)];
            T fv = sv.coeff[0] * field[g.index(i, j + sv.offset[0])];
            for (int k = 1; k < 3; ++k) {
                fu += su.coeff[k] * field[g.index(i + su.offset[k], j)];
                fv += sv.coeff[k] * field[g.index(i, j + sv.offset[k])];
            }
            out[0][g.index(i, j)] = fu;
            out[1][g.index(i, j)] = fv;
        }
    return out;
}

/// Trapezoidal nodal quadrature weights including the area density a(u,v).
std::vector<double> quadrature_weights(const Grid2D& g, const FrameField& frames);

} // namespace cosshell
