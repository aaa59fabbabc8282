// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/metric.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace kvn {

namespace {

const cplx I(0.0, 1.0);

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string fmt(cplx v) {
    std::ostringstream os;
    os << std::setprecision(6) << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    return os.str();
}

Mat symplectic_metric(int n) {
    const int d = 1 << (2 * n);
    Eigen::MatrixXd w = omega_upper(n);
    Mat g = Mat::Zero(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            std::vector<int> A = basis_word(n, r), B = basis_word(n, c);
            if (A.size() != B.size()) continue;
            const int m = static_cast<int>(A.size());
            if (m == 0) {
                g(r, c) = 1.0;
                continue;
            }
            Eigen::MatrixXd sub(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) sub(i, j) = w(A[i] - 1, B[j] - 1);
            double det = sub.determinant();
            if (std::abs(det) < 1e-14) continue;
            g(r, c) = std::pow(I, m) * std::round(det);
        }
    return g;
}

}  // namespace

MetricKind parse_metric_kind(const std::string& s) {
    if (s == "svh") return MetricKind::svh;
    if (s == "gauge") return MetricKind::gauge;
    if (s == "symplectic") return MetricKind::symplectic;
    if (s == "genSymplectic") return MetricKind::genSymplectic;
    if (s == "genGaugeA") return MetricKind::genGaugeA;
    if (s == "genGaugeB") return MetricKind::genGaugeB;
    throw std::invalid_argument("unknown metric kind '" + s + "'");
}

std::string metric_kind_name(MetricKind k) {
    switch (k) {
        case MetricKind::svh: return "svh";
        case MetricKind::gauge: return "gauge";
        case MetricKind::symplectic: return "symplectic";
        case MetricKind::genSymplectic: return "genSymplectic";
        case MetricKind::genGaugeA: return "genGaugeA";
        case MetricKind::genGaugeB: return "genGaugeB";
    }
    return "?";
}

std::string MetricSpec::param_string() const {
    switch (kind) {
        case MetricKind::genSymplectic: return "b=" + fmt(params.b);
        case MetricKind::genGaugeA:
            return "theta=" + fmt(params.theta) + ";gamma=" + fmt(params.gamma) + ";g03=" + fmt(params.g03);
        case MetricKind::genGaugeB:
            return "theta=" + fmt(params.theta) + ";b=" + fmt(params.b) + ";g03=" + fmt(params.g03);
        default: return "-";
    }
}

std::string MetricSpec::label() const {
    std::string p = param_string();
    return metric_kind_name(kind) + (p == "-" ? "" : "(" + p + ")");
}

Mat chapter_to_matrix_basis(const Mat& gc) {
    if (gc.rows() != 4 || gc.cols() != 4) throw std::invalid_argument("chapter basis is defined for n=1 only");
    Eigen::Vector4cd t(1, 1, 1, -1);
    return t.asDiagonal() * gc * t.asDiagonal();
}

MetricSpec build_metric(MetricKind kind, int n, const MetricParams& p) {
    if (n < 1 || n > n_max()) throw std::invalid_argument("metric: n out of range");
    MetricSpec m{kind, n, p, {}};
    const int d = 1 << (2 * n);
    const bool n1_only = kind != MetricKind::svh && kind != MetricKind::symplectic;
    if (n1_only && n != 1) throw std::invalid_argument("metric kind " + metric_kind_name(kind) + " is only defined for n=1");
    Mat gc = Mat::Zero(4, 4);
    const cplx e1 = std::exp(I * p.theta), e2 = std::exp(2.0 * I * p.theta);
    switch (kind) {
        case MetricKind::svh:
            m.g = Mat::Identity(d, d);
            break;
        case MetricKind::symplectic:
            m.g = symplectic_metric(n);
            break;
        case MetricKind::gauge:
            gc(0, 3) = -I;
            gc(1, 2) = -I;
            gc(2, 1) = I;
            gc(3, 0) = I;
            m.g = chapter_to_matrix_basis(gc);
            break;
        case MetricKind::genSymplectic:
            gc(0, 0) = 1.0;
            gc(1, 2) = -I * p.b;
            gc(2, 1) = I * p.b;
            gc(3, 3) = -p.b * p.b;
            m.g = chapter_to_matrix_basis(gc);
            break;
        case MetricKind::genGaugeA:
            gc(0, 0) = I * p.g03 * e1 * p.gamma;
            gc(0, 3) = p.g03;
            gc(1, 2) = p.g03 * e1;
            gc(2, 1) = -p.g03 * e1;
            gc(3, 0) = -p.g03 * e2;
            m.g = chapter_to_matrix_basis(gc);
            break;
        case MetricKind::genGaugeB:
            gc(0, 3) = p.g03;
            gc(1, 2) = p.g03 * e1;
            gc(2, 1) = -p.g03 * e1;
            gc(3, 0) = -p.g03 * e2;
            gc(3, 3) = -I * p.g03 * e1 * p.b;
            m.g = chapter_to_matrix_basis(gc);
            break;
    }
    if ((m.g - m.g.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("metric " + m.label() + " is not Hermitian for these parameters");
    if (m.g.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("metric " + m.label() + " vanishes");
    return m;
}

EigenSummary metric_eigenvalues(const MetricSpec& m, double tol) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m.g);
    if (es.info() != Eigen::Success) throw std::runtime_error("metric eigensolver did not converge");
    EigenSummary s;
    for (int i = 0; i < es.eigenvalues().size(); ++i) s.values.push_back(es.eigenvalues()[i]);
    bool pos = false, neg = false, zero = false;
    for (double v : s.values) {
        if (v > tol) pos = true;
        else if (v < -tol) neg = true;
        else zero = true;
    }
    if (zero) s.classification = "degenerate";
    else if (pos && neg) s.classification = "indefinite";
    else s.classification = pos ? "positive-definite" : "negative-definite";
    return s;
}

cplx inner(const MetricSpec& m, const Vec& phi, const Vec& psi) { return phi.dot(m.g * psi); }

DiffOp adjoint(const DiffOp& A, const MetricSpec& m) {
    Mat ginv = m.g.inverse();
    if (!ginv.allFinite() || (ginv * m.g - Mat::Identity(m.g.rows(), m.g.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("metric is singular");
    SectorOperator G{m.n, m.g.sparseView()}, Gi{m.n, ginv.sparseView()};
    return DiffOp::sector(Gi) * A.formal_adjoint() * DiffOp::sector(G);
}

HermiticityReport hermiticity_report(const Poly& H, const MetricSpec& m, double tol) {
    if (H.n() != m.n) throw std::invalid_argument("Hamiltonian and metric disagree on n");
    DiffOp Ht = evolution_operator(H);
    SectorOperator G{m.n, m.g.sparseView()};
    DiffOp gA = DiffOp::sector(G) * Ht, Ag = Ht.formal_adjoint() * DiffOp::sector(G);
    HermiticityReport r{m.kind, m.label(), H.str(), (gA - Ag).max_abs(), false};
    r.hermitian = r.residual <= tol;
    return r;
}

bool NogoRow::hermitian_for_all() const {
    for (const auto& r : reports)
        if (!r.hermitian) return false;
    return true;
}

std::vector<NogoRow> nogo_scan(const std::vector<Poly>& family, const std::vector<MetricSpec>& metrics) {
    std::vector<NogoRow> rows;
    for (const auto& m : metrics) {
        NogoRow row;
        row.metric_label = m.label();
        row.kind = m.kind;
        row.params = m.param_string();
        EigenSummary es = metric_eigenvalues(m);
        row.positive = es.classification == "positive-definite";
        row.min_eig = es.values.front();
        row.max_eig = es.values.back();
        for (const auto& H : family) row.reports.push_back(hermiticity_report(H, m));
        rows.push_back(std::move(row));
    }
    return rows;
}

SectorOperator xi_op(int n, int i, bool star) {
    const double s = 1.0 / std::sqrt(2.0);
    return (build_c(n, q_index(i)) + build_c(n, p_index(i)) * (star ? -I : I)) * cplx(s);
}

std::vector<Vec> physical_basis(PhysicalKind kind, int n) {
    const int d = 1 << (2 * n);
    Vec vac = Vec::Zero(d);
    vac[0] = 1.0;
    SpMat pair(d, d);
    for (int i = 1; i <= n; ++i) {
        if (kind == PhysicalKind::svh) pair += (build_c(n, q_index(i)) * build_c(n, p_index(i))).m;
        else pair += (xi_op(n, i, false) * xi_op(n, i, true)).m;
    }
    std::vector<Vec> out;
    Vec cur = vac;
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            cur = pair * cur;
            fact *= k;
        }
        if (kind == PhysicalKind::svh) out.push_back(cur / fact);
        else if (k % 2 == 0) out.push_back(cur);
    }
    return out;
}

KernelCheck physical_kernel_check(int n, int degree, const std::vector<Poly>& hamiltonians,
                                  const std::vector<std::vector<double>>& points, double tol) {
    std::vector<int> cols = degree_indices(n, degree);
    const int d = 1 << (2 * n);
    std::vector<Mat> blocks;
    for (const auto& H : hamiltonians) {
        DiffOp F = evolution_operator(H).fermionic_part();
        for (const auto& x : points) {
            Mat M = F.eval_sector(x);
            Mat B(d, cols.size());
            for (size_t j = 0; j < cols.size(); ++j) B.col(j) = M.col(cols[j]);
            blocks.push_back(B);
        }
    }
    Mat S(static_cast<Eigen::Index>(blocks.size()) * d, cols.size());
    for (size_t k = 0; k < blocks.size(); ++k) S.block(static_cast<Eigen::Index>(k) * d, 0, d, cols.size()) = blocks[k];
    Eigen::JacobiSVD<Mat> svd(S);
    const auto& sv = svd.singularValues();
    KernelCheck kc;
    kc.degree = degree;
    int rank = 0;
    const double scale = std::max(1.0, sv.size() ? sv[0] : 0.0);
    kc.smallest_kept = scale;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] > tol * scale) {
            ++rank;
            kc.smallest_kept = std::min(kc.smallest_kept, sv[i]);
        } else {
            kc.largest_dropped = std::max(kc.largest_dropped, sv[i]);
        }
    }
    kc.kernel_dim = static_cast<int>(cols.size()) - rank;
    kc.family_size = 0;
    for (const Vec& v : physical_basis(PhysicalKind::svh, n))
        if (basis_degree(n, [&] {
                int idx = 0;
                v.cwiseAbs().maxCoeff(&idx);
                return idx;
            }()) == degree)
            ++kc.family_size;
    kc.extra_vectors = kc.kernel_dim > kc.family_size;
    return kc;
}

namespace {

struct Flow {
    int n;
    std::vector<Poly> h;
    DiffOp F;
    std::vector<double> vel(const std::vector<double>& x) const {
        std::vector<double> v(2 * n);
        for (int a = 0; a < 2 * n; ++a) v[a] = h[a].eval(x).real();
        return v;
    }
};

std::vector<double> axpy(const std::vector<double>& x, double s, const std::vector<double>& k) {
    std::vector<double> r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] += s * k[i];
    return r;
}

void rk4_point(const Flow& f, std::vector<double>& x, double dt) {
    auto k1 = f.vel(x), k2 = f.vel(axpy(x, dt / 2, k1)), k3 = f.vel(axpy(x, dt / 2, k2)), k4 = f.vel(axpy(x, dt, k3));
    for (size_t i = 0; i < x.size(); ++i) x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

void rk4_coupled(const Flow& f, std::vector<double>& x, Vec& psi, double dt) {
    auto rhs = [&](const std::vector<double>& xx, const Vec& p) { return Vec((-I) * (f.F.eval_sector(xx) * p)); };
    auto k1 = f.vel(x);
    Vec p1 = rhs(x, psi);
    auto x2 = axpy(x, dt / 2, k1);
    auto k2 = f.vel(x2);
    Vec p2 = rhs(x2, psi + dt / 2 * p1);
    auto x3 = axpy(x, dt / 2, k2);
    auto k3 = f.vel(x3);
    Vec p3 = rhs(x3, psi + dt / 2 * p2);
    auto x4 = axpy(x, dt, k3);
    auto k4 = f.vel(x4);
    Vec p4 = rhs(x4, psi + dt * p3);
    for (size_t i = 0; i < x.size(); ++i) x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    psi += dt / 6 * (p1 + 2.0 * p2 + 2.0 * p3 + p4);
}

}  // namespace

JacobiSeries jacobi_norm_evolution(const Poly& H, const std::vector<std::vector<double>>& points,
                                   const std::vector<std::vector<double>>& psi0, double T, int steps, double eps) {
    const int n = H.n();
    if (points.size() != psi0.size()) throw std::invalid_argument("one one-form per point is required");
    if (steps < 1 || !(T > 0)) throw std::invalid_argument("bad time grid");
    Flow f{n, hamiltonian_vector(H), evolution_operator(H).fermionic_part()};
    Eigen::MatrixXd w = omega_upper(n);
    const double dt = T / steps;
    JacobiSeries js;
    for (int s = 0; s <= steps; ++s) js.t.push_back(s * dt);
    std::vector<int> one = degree_indices(n, 1);
    for (size_t k = 0; k < points.size(); ++k) {
        if (static_cast<int>(points[k].size()) != 2 * n || static_cast<int>(psi0[k].size()) != 2 * n)
            throw std::invalid_argument("point and one-form need 2n components");
        std::vector<double> x = points[k];
        Vec psi = Vec::Zero(1 << (2 * n));
        for (int a = 1; a <= 2 * n; ++a) psi[basis_index(n, {a})] = psi0[k][a - 1];
        Eigen::VectorXd v = w * Eigen::Map<const Eigen::VectorXd>(psi0[k].data(), 2 * n);
        std::vector<double> xp = axpy(x, eps, std::vector<double>(v.data(), v.data() + 2 * n));
        std::vector<double> xm = axpy(x, -eps, std::vector<double>(v.data(), v.data() + 2 * n));
        std::vector<double> fn, jn;
        for (int s = 0; s <= steps; ++s) {
            if (s > 0) {
                rk4_coupled(f, x, psi, dt);
                rk4_point(f, xp, dt);
                rk4_point(f, xm, dt);
            }
            for (double c : x)
                if (!std::isfinite(c)) throw std::runtime_error("trajectory escaped (non-finite state)");
            double nf = 0.0;
            for (int idx : one) nf += std::norm(psi[idx]);
            double nj = 0.0;
            for (int a = 0; a < 2 * n; ++a) nj += std::pow((xp[a] - xm[a]) / (2 * eps), 2);
            fn.push_back(std::sqrt(nf));
            jn.push_back(std::sqrt(nj));
            js.max_mismatch = std::max(js.max_mismatch, std::abs(fn.back() - jn.back()) / std::max(1.0, jn.back()));
        }
        js.form_norm.push_back(std::move(fn));
        js.jacobi_norm.push_back(std::move(jn));
    }
    return js;
}

double log_growth_rate(const std::vector<double>& t, const std::vector<double>& y, double t0, double t1) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t0 || t[i] > t1) continue;
        double ly = std::log(y[i]);
        sx += t[i];
        sy += ly;
        sxx += t[i] * t[i];
        sxy += t[i] * ly;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("growth fit window holds fewer than two samples");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace kvn
