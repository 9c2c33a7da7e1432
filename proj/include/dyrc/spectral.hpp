#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "dyrc/error.hpp"
#include "dyrc/graph.hpp"
#include "dyrc/io.hpp"

namespace dyrc {

/// Largest eigenvalue modulus. Symmetric weight matrices go through the
/// self-adjoint solver; everything else through the real Schur form.
[[nodiscard]] inline double spectral_radius(const WeightedDigraph& g) {
    const auto& w = g.weights();
    require(w.rows() >= 1, Errc::InvalidArgument, "spectral radius of an empty matrix");
    if (w.rows() == 1) return std::abs(w(0, 0));
    if (!g.directed() || w == w.transpose()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw Error(Errc::NoConvergence, "symmetric eigensolver did not converge");
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(w, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw Error(Errc::NoConvergence, "real Schur iteration did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Multiplies every weight by target / spectral_radius(g).
/// Spectral radii below 1e-12 of the Frobenius norm count as zero: such
/// graphs (empty, nilpotent) cannot be normalized.
[[nodiscard]] inline WeightedDigraph scale_to_spectral_radius(const WeightedDigraph& g, double target) {
    require(target > 0.0 && std::isfinite(target), Errc::InvalidArgument, "target spectral radius must be positive");
    const double nu = spectral_radius(g);
    const double norm = g.weights().norm();
    if (nu == 0.0 || nu <= 1e-12 * norm) {
        throw Error(Errc::ZeroSpectralRadius,
                    "graph has spectral radius " + io::format_real(nu, 6) + " and cannot be normalized");
    }
    return g.scaled(target / nu);
}

}  // namespace dyrc
