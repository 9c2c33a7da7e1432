#pragma once

// Leaky-integrator echo state network.
//
//   r_{k} = (1 - alpha) r_{k-1} + alpha tanh(A r_{k-1} + W_in x_k)
//   y_k   = W_out r_k
//
// Column k of a state matrix is the state after consuming input column k, i.e.
// the state that produces output k.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "dyrc/error.hpp"
#include "dyrc/io.hpp"
#include "dyrc/rng.hpp"

namespace dyrc {

struct ReservoirParams {
    std::size_t n_nodes = 100;
    std::size_t n_inputs = 3;
    double alpha = 0.5;
    double input_fraction = 0.5;
    double ridge_lambda = 1e-6;
    std::size_t washout = 100;
    double spectral_target = 0.9;

    void validate() const {
        require(n_nodes >= 1 && n_inputs >= 1, Errc::InvalidArgument, "reservoir needs nodes and inputs");
        require(alpha >= 0.0 && alpha <= 1.0, Errc::InvalidArgument, "alpha must lie in [0, 1]");
        require(input_fraction > 0.0 && input_fraction <= 1.0, Errc::InvalidArgument,
                "input_fraction must lie in (0, 1]");
        require(ridge_lambda >= 0.0 && std::isfinite(ridge_lambda), Errc::InvalidArgument,
                "ridge_lambda must be non-negative");
        require(spectral_target > 0.0 && std::isfinite(spectral_target), Errc::InvalidArgument,
                "spectral_target must be positive");
    }
};

using StateMatrix = Eigen::MatrixXd;

struct ReservoirModel {
    Eigen::MatrixXd A;                     // n x n
    Eigen::MatrixXd W_in;                  // n x m
    std::optional<Eigen::MatrixXd> W_out;  // m_out x n once trained
    double alpha = 0.5;
    double spectral_target = 0.9;
    std::uint64_t seed = 0;

    [[nodiscard]] Eigen::Index n() const noexcept { return A.rows(); }
    [[nodiscard]] Eigen::Index m() const noexcept { return W_in.cols(); }
    [[nodiscard]] bool trained() const noexcept { return W_out.has_value(); }
    [[nodiscard]] Eigen::Index m_out() const noexcept { return W_out ? W_out->rows() : 0; }

    void check_shapes() const {
        require(A.rows() == A.cols(), Errc::DimensionMismatch, "A must be square");
        require(W_in.rows() == A.rows(), Errc::DimensionMismatch, "W_in rows must equal reservoir size");
        if (W_out) require(W_out->cols() == A.rows(), Errc::DimensionMismatch, "W_out columns must equal reservoir size");
    }
};

/// ceil(input_fraction * n) rows chosen uniformly without replacement receive
/// weights uniform on [-1, 1]; all other rows are zero.
[[nodiscard]] inline Eigen::MatrixXd build_input_layer(std::size_t n, std::size_t m, double input_fraction, Rng& rng) {
    require(n >= 1 && m >= 1, Errc::InvalidArgument, "input layer needs n >= 1 and m >= 1");
    require(input_fraction > 0.0 && input_fraction <= 1.0, Errc::InvalidArgument, "input_fraction must lie in (0, 1]");
    auto rows = static_cast<std::size_t>(std::ceil(input_fraction * static_cast<double>(n)));
    rows = std::min(rows, n);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (auto r : rng.sample_without_replacement(n, rows)) {
        for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(m); ++c) {
            double v = 0.0;
            while (v == 0.0) v = rng.uniform(-1.0, 1.0);  // keep selected rows nonzero
            w(static_cast<Eigen::Index>(r), c) = v;
        }
    }
    return w;
}

namespace detail {
inline void step_state(const ReservoirModel& model, Eigen::VectorXd& r, const Eigen::Ref<const Eigen::VectorXd>& x) {
    Eigen::VectorXd pre = model.A * r;
    pre.noalias() += model.W_in * x;
    r = (1.0 - model.alpha) * r + model.alpha * pre.unaryExpr([](double v) { return std::tanh(v); });
}
}  // namespace detail

[[nodiscard]] inline StateMatrix evolve(const ReservoirModel& model, const Eigen::MatrixXd& inputs,
                                        const Eigen::VectorXd& r0) {
    model.check_shapes();
    require(inputs.rows() == model.m(), Errc::DimensionMismatch,
            "inputs have " + std::to_string(inputs.rows()) + " rows, model expects " + std::to_string(model.m()));
    require(r0.size() == model.n(), Errc::DimensionMismatch, "initial state length differs from reservoir size");
    require(inputs.allFinite(), Errc::NonFinite, "inputs must be finite");

    StateMatrix states(model.n(), inputs.cols());
    Eigen::VectorXd r = r0;
    for (Eigen::Index k = 0; k < inputs.cols(); ++k) {
        detail::step_state(model, r, inputs.col(k));
        states.col(k) = r;
    }
    return states;
}

[[nodiscard]] inline StateMatrix evolve(const ReservoirModel& model, const Eigen::MatrixXd& inputs) {
    return evolve(model, inputs, Eigen::VectorXd::Zero(model.n()));
}

struct ReadoutFit {
    Eigen::MatrixXd W_out;     // m_out x n
    double residual = 0.0;     // ||G W_out^T - R Y^T|| / ||R Y^T||
    bool underdetermined = false;  // fewer regression columns than nodes
};

/// Normal-equation residual of a candidate readout, relative to ||R' Y'^T||.
[[nodiscard]] inline double ridge_residual(const StateMatrix& R, const Eigen::MatrixXd& Y, double lambda,
                                           std::size_t washout, const Eigen::MatrixXd& W_out) {
    const auto keep = R.cols() - static_cast<Eigen::Index>(washout);
    const auto Rt = R.rightCols(keep);
    const auto Yt = Y.rightCols(keep);
    Eigen::MatrixXd G = Rt * Rt.transpose();
    G.diagonal().array() += lambda;
    const Eigen::MatrixXd B = Rt * Yt.transpose();
    const double scale = B.norm();
    const double res = (G * W_out.transpose() - B).norm();
    return scale > 0.0 ? res / scale : res;
}

/// Ridge regression W_out = Y' R'^T (R' R'^T + lambda I)^{-1} over the columns
/// left after dropping `washout`. Cholesky solve plus one refinement step.
[[nodiscard]] inline ReadoutFit fit_readout(const StateMatrix& R, const Eigen::MatrixXd& Y, double lambda,
                                            std::size_t washout) {
    require(R.cols() == Y.cols(), Errc::DimensionMismatch, "states and targets differ in length");
    require(lambda >= 0.0 && std::isfinite(lambda), Errc::InvalidArgument, "lambda must be non-negative");
    require(static_cast<Eigen::Index>(washout) < R.cols(), Errc::TooShort, "washout consumes every state");
    require(R.allFinite() && Y.allFinite(), Errc::NonFinite, "states and targets must be finite");

    const auto keep = R.cols() - static_cast<Eigen::Index>(washout);
    const auto Rt = R.rightCols(keep);
    const auto Yt = Y.rightCols(keep);
    const auto n = R.rows();

    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    G.selfadjointView<Eigen::Lower>().rankUpdate(Rt);
    G.triangularView<Eigen::StrictlyUpper>() = G.transpose();
    G.diagonal().array() += lambda;
    const Eigen::MatrixXd B = Rt * Yt.transpose();

    Eigen::LLT<Eigen::MatrixXd> llt(G);
    const bool singular = llt.info() != Eigen::Success || llt.rcond() < 1e-15;
    if (singular) {
        throw Error(Errc::SingularSystem, lambda == 0.0 ? "state Gram matrix is singular; use lambda > 0"
                                                        : "regularized Gram matrix is not positive definite");
    }
    Eigen::MatrixXd X = llt.solve(B);
    const Eigen::MatrixXd correction = llt.solve(B - G * X);
    X += correction;

    ReadoutFit fit;
    fit.W_out = X.transpose();
    const double scale = B.norm();
    const double res = (G * X - B).norm();
    fit.residual = scale > 0.0 ? res / scale : res;
    fit.underdetermined = keep <= n;
    if (!(fit.residual <= 1e-8)) {
        throw Error(Errc::SingularSystem,
                    "normal-equation residual " + io::format_real(fit.residual, 3) + " exceeds 1e-8; raise lambda");
    }
    return fit;
}

[[nodiscard]] inline Eigen::MatrixXd train_readout(const StateMatrix& R, const Eigen::MatrixXd& Y, double lambda,
                                                   std::size_t washout) {
    return fit_readout(R, Y, lambda, washout).W_out;
}

/// Teacher-forced prediction: true inputs drive the reservoir.
[[nodiscard]] inline Eigen::MatrixXd predict_open_loop(const ReservoirModel& model, const Eigen::MatrixXd& inputs,
                                                       const Eigen::VectorXd& r0) {
    if (!model.trained()) throw Error(Errc::NotTrained, "model has no readout");
    return *model.W_out * evolve(model, inputs, r0);
}

[[nodiscard]] inline Eigen::MatrixXd predict_open_loop(const ReservoirModel& model, const Eigen::MatrixXd& inputs) {
    return predict_open_loop(model, inputs, Eigen::VectorXd::Zero(model.n()));
}

/// Free run. Input k is [y_{k-1}; forcing_k]: the model's previous output
/// (y_init for k = 0) stacked on the externally supplied forcing column.
[[nodiscard]] inline Eigen::MatrixXd predict_closed_loop(const ReservoirModel& model, const Eigen::MatrixXd& forcing,
                                                         const Eigen::VectorXd& y_init, const Eigen::VectorXd& r0) {
    if (!model.trained()) throw Error(Errc::NotTrained, "model has no readout");
    model.check_shapes();
    const auto m_out = model.m_out();
    require(y_init.size() == m_out, Errc::DimensionMismatch, "y_init length differs from output dimension");
    require(forcing.rows() + m_out == model.m(), Errc::DimensionMismatch,
            "output dimension plus forcing rows must equal the input dimension");
    require(r0.size() == model.n(), Errc::DimensionMismatch, "initial state length differs from reservoir size");

    Eigen::MatrixXd out(m_out, forcing.cols());
    Eigen::VectorXd r = r0;
    Eigen::VectorXd x(model.m());
    Eigen::VectorXd y = y_init;
    for (Eigen::Index k = 0; k < forcing.cols(); ++k) {
        x.head(m_out) = y;
        x.tail(forcing.rows()) = forcing.col(k);
        detail::step_state(model, r, x);
        y = *model.W_out * r;
        if (!y.allFinite())
            throw Error(Errc::NonFinite, "closed-loop prediction diverged at step " + std::to_string(k));
        out.col(k) = y;
    }
    return out;
}

[[nodiscard]] inline Eigen::MatrixXd predict_closed_loop(const ReservoirModel& model, const Eigen::MatrixXd& forcing,
                                                         const Eigen::VectorXd& y_init) {
    return predict_closed_loop(model, forcing, y_init, Eigen::VectorXd::Zero(model.n()));
}

/// Mean of |y_hat - y| over every entry.
[[nodiscard]] inline double mae(const Eigen::MatrixXd& y_hat, const Eigen::MatrixXd& y) {
    require(y_hat.rows() == y.rows() && y_hat.cols() == y.cols(), Errc::ShapeMismatch,
            "prediction and target shapes differ");
    require(y.size() > 0, Errc::ShapeMismatch, "empty prediction");
    return (y_hat - y).cwiseAbs().sum() / static_cast<double>(y.size());
}

// ---------------------------------------------------------------------------
// Model archive: one JSON header line, then dense row-major CSV blocks
//   # A <rows> <cols>
//   # W_in <rows> <cols>
//   # W_out <rows> <cols>      (only when trained)
// ---------------------------------------------------------------------------

namespace detail {
inline void write_block(std::ostream& out, const char* name, const Eigen::MatrixXd& m) {
    out << "# " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << io::format_real(m(i, j));
        }
        out << '\n';
    }
}

inline Eigen::MatrixXd read_block(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "missing block " + name);
    io::strip_cr(line);
    const auto f = io::split(line, ' ');
    if (f.size() != 4 || f[0] != "#" || f[1] != name)
        throw Error(Errc::ParseError, "expected '# " + name + " <rows> <cols>', got '" + line + "'");
    const auto rows = io::parse_int(f[2]);
    const auto cols = io::parse_int(f[3]);
    if (rows < 0 || cols < 0) throw Error(Errc::ParseError, "negative block dimensions");
    Eigen::MatrixXd m(rows, cols);
    for (long long i = 0; i < rows; ++i) {
        if (!std::getline(in, line)) throw Error(Errc::ParseError, "block " + name + " truncated");
        io::strip_cr(line);
        const auto cells = io::split(line);
        if (static_cast<long long>(cells.size()) != cols)
            throw Error(Errc::ParseError, "block " + name + " row " + std::to_string(i) + " has wrong width");
        for (long long j = 0; j < cols; ++j) m(i, j) = io::parse_real(cells[static_cast<std::size_t>(j)]);
    }
    return m;
}
}  // namespace detail

inline void save_model(std::ostream& out, const ReservoirModel& model) {
    model.check_shapes();
    nlohmann::json header = {
        {"format", "dyrc-model"}, {"version", 1},           {"n", model.n()},
        {"m", model.m()},         {"m_out", model.m_out()}, {"alpha", model.alpha},
        {"spectral_target", model.spectral_target},         {"seed", model.seed},
        {"trained", model.trained()},
    };
    out << header.dump() << '\n';
    detail::write_block(out, "A", model.A);
    detail::write_block(out, "W_in", model.W_in);
    if (model.W_out) detail::write_block(out, "W_out", *model.W_out);
}

[[nodiscard]] inline ReservoirModel load_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty model archive");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("model header: ") + e.what());
    }
    if (header.value("format", "") != "dyrc-model") throw Error(Errc::ParseError, "not a dyrc model archive");

    ReservoirModel model;
    try {
        model.alpha = header.at("alpha").get<double>();
        model.spectral_target = header.at("spectral_target").get<double>();
        model.seed = header.at("seed").get<std::uint64_t>();
        model.A = detail::read_block(in, "A");
        model.W_in = detail::read_block(in, "W_in");
        if (header.at("trained").get<bool>()) model.W_out = detail::read_block(in, "W_out");
        require(model.n() == header.at("n").get<Eigen::Index>() && model.m() == header.at("m").get<Eigen::Index>() &&
                    model.m_out() == header.at("m_out").get<Eigen::Index>(),
                Errc::ParseError, "block dimensions disagree with header");
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("model header: ") + e.what());
    }
    model.check_shapes();
    return model;
}

}  // namespace dyrc
