#include "spectral.hpp"

#include <Eigen/Eigenvalues>
#include <random>
#include <stdexcept>

namespace podes {

namespace {

// Interval-gradient matrix G: (N+1) x N with (Gu)_k = (u_k - u_{k-1})/h
// and implicit zero boundary values; Avg is the matching interval average.
void gradient_matrices(const GridSpec& g, Eigen::MatrixXd& G, Eigen::MatrixXd& Avg) {
    const Eigen::Index n = static_cast<Eigen::Index>(g.N);
    G.setZero(n + 1, n);
    Avg.setZero(n + 1, n);
    for (Eigen::Index k = 0; k <= n; ++k) {
        if (k < n) {
            G(k, k) = 1.0 / g.h;
            Avg(k, k) = 0.5;
        }
        if (k > 0) {
            G(k, k - 1) = -1.0 / g.h;
            Avg(k, k - 1) = 0.5;
        }
    }
}

} // namespace

GeneratorMatrix assemble_generator(const GridSpec& g, const PhysicalParams& p) {
    const Eigen::Index N = static_cast<Eigen::Index>(g.N);
    const Eigen::Index Mz = static_cast<Eigen::Index>(g.M - 1);
    const Eigen::Index dim = 4 * N + N * Mz;
    GeneratorMatrix gm;
    gm.grid = g;
    gm.params = p;
    gm.A.setZero(dim, dim);
    gm.Wh.setZero(dim, dim);

    auto U = [&](Eigen::Index i) { return i; };
    auto V = [&](Eigen::Index i) { return N + i; };
    auto P = [&](Eigen::Index i) { return 2 * N + i; };  // phi
    auto S = [&](Eigen::Index i) { return 3 * N + i; };  // psi
    auto Z = [&](Eigen::Index i, Eigen::Index j) {        // j in 1..M-1
        return 4 * N + i * Mz + (j - 1);
    };

    const double invh2 = 1.0 / (g.h * g.h);
    const double inv2h = 0.5 / g.h;
    Eigen::MatrixXd& A = gm.A;

    for (Eigen::Index i = 0; i < N; ++i) {
        A(U(i), V(i)) = 1.0;
        A(P(i), S(i)) = 1.0;

        // v' = (mu/rho) D2 u + (b/rho) D1 phi
        A(V(i), U(i)) += -2.0 * p.mu / p.rho * invh2;
        if (i > 0) A(V(i), U(i - 1)) += p.mu / p.rho * invh2;
        if (i < N - 1) A(V(i), U(i + 1)) += p.mu / p.rho * invh2;
        if (i > 0) A(V(i), P(i - 1)) += -p.b / p.rho * inv2h;
        if (i < N - 1) A(V(i), P(i + 1)) += p.b / p.rho * inv2h;

        // psi' = (delta/J) D2 phi - (b/J) D1 u - (xi/J) phi - (mu1/J) psi
        //        - (mu2/J) z(., 1)
        A(S(i), P(i)) += -2.0 * p.delta / p.J * invh2 - p.xi / p.J;
        if (i > 0) A(S(i), P(i - 1)) += p.delta / p.J * invh2;
        if (i < N - 1) A(S(i), P(i + 1)) += p.delta / p.J * invh2;
        if (i > 0) A(S(i), U(i - 1)) += p.b / p.J * inv2h;
        if (i < N - 1) A(S(i), U(i + 1)) += -p.b / p.J * inv2h;
        A(S(i), S(i)) += -p.mu1 / p.J;
        A(S(i), Z(i, Mz)) += -p.mu2 / p.J;

        // upwind transport rows; the first one reads psi as inflow
        const double c = 1.0 / (p.tau * g.dy);
        for (Eigen::Index j = 1; j <= Mz; ++j) {
            A(Z(i, j), Z(i, j)) += -c;
            if (j == 1)
                A(Z(i, j), S(i)) += c;
            else
                A(Z(i, j), Z(i, j - 1)) += c;
        }
    }

    // Weight matrix of the discrete H-inner product; identical quadrature
    // to diagnostics::h_normsq.
    Eigen::MatrixXd G, Avg;
    gradient_matrices(g, G, Avg);
    const Eigen::MatrixXd GtG = g.h * G.transpose() * G;
    const Eigen::MatrixXd Cross = g.h * p.b * G.transpose() * Avg;
    Eigen::MatrixXd& W = gm.Wh;
    for (Eigen::Index i = 0; i < N; ++i) {
        W(V(i), V(i)) = p.rho * g.h;
        W(S(i), S(i)) = p.J * g.h;
        W(P(i), P(i)) += p.xi * g.h;
        for (Eigen::Index j = 1; j <= Mz; ++j)
            W(Z(i, j), Z(i, j)) = p.eta * g.h * g.dy;
    }
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j) {
            W(U(i), U(j)) += p.mu * GtG(i, j);
            W(P(i), P(j)) += p.delta * GtG(i, j);
            W(U(i), P(j)) += Cross(i, j);
            W(P(j), U(i)) += Cross(i, j);
        }
    return gm;
}

Eigen::VectorXd pack_state(const SimState& s, const GridSpec& g) {
    const Eigen::Index N = static_cast<Eigen::Index>(g.N);
    const Eigen::Index Mz = static_cast<Eigen::Index>(g.M - 1);
    Eigen::VectorXd x(4 * N + N * Mz);
    for (Eigen::Index i = 0; i < N; ++i) {
        x(i) = s.u[i];
        x(N + i) = s.v[i];
        x(2 * N + i) = s.phi[i];
        x(3 * N + i) = s.psi[i];
        for (Eigen::Index j = 1; j <= Mz; ++j)
            x(4 * N + i * Mz + (j - 1)) = s.zat(i, j, g);
    }
    return x;
}

SimState unpack_state(const Eigen::VectorXd& x, const GridSpec& g) {
    SimState s(g);
    const Eigen::Index N = static_cast<Eigen::Index>(g.N);
    const Eigen::Index Mz = static_cast<Eigen::Index>(g.M - 1);
    for (Eigen::Index i = 0; i < N; ++i) {
        s.u[i] = x(i);
        s.v[i] = x(N + i);
        s.phi[i] = x(2 * N + i);
        s.psi[i] = x(3 * N + i);
        for (Eigen::Index j = 1; j <= Mz; ++j)
            s.zat(i, j, g) = x(4 * N + i * Mz + (j - 1));
    }
    s.impose_inflow(g);
    return s;
}

double dissipativity_check(const GeneratorMatrix& gm, std::size_t trials,
                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    double worst = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd x(gm.dim());
    for (std::size_t t = 0; t < trials; ++t) {
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = dist(rng);
        const double den = x.dot(gm.Wh * x);
        if (den <= 0.0) continue;
        const double num = x.dot(gm.Wh * (gm.A * x));
        worst = std::max(worst, num / den);
    }
    return worst;
}

std::vector<std::complex<double>> spectrum(const GeneratorMatrix& gm) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(gm.A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");
    std::vector<std::complex<double>> out(gm.dim());
    for (Eigen::Index i = 0; i < gm.dim(); ++i) out[i] = es.eigenvalues()(i);
    return out;
}

SpectralMode rightmost_mode(const GeneratorMatrix& gm) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(gm.A, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge");
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < gm.dim(); ++i)
        if (es.eigenvalues()(i).real() > es.eigenvalues()(best).real()) best = i;
    SpectralMode mode;
    mode.lambda = es.eigenvalues()(best);
    mode.shape = es.eigenvectors().col(best).real();
    double nrm = std::sqrt(mode.shape.dot(gm.Wh * mode.shape));
    if (nrm < 1e-12) {  // eigenvector happened to be (nearly) purely imaginary
        mode.shape = es.eigenvectors().col(best).imag();
        nrm = std::sqrt(mode.shape.dot(gm.Wh * mode.shape));
    }
    if (nrm > 0.0) mode.shape /= nrm;
    return mode;
}

double spectral_abscissa(const std::vector<std::complex<double>>& eigs) {
    double a = -std::numeric_limits<double>::infinity();
    for (const auto& e : eigs) a = std::max(a, e.real());
    return a;
}

} // namespace podes
