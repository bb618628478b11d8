#include "liex/dynamics.hpp"

#include "liex/casimir.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace liex {

HamiltonianSpec HamiltonianSpec::rigid_body(const std::array<double, 3>& inertia) {
    HamiltonianSpec h;
    h.a = Eigen::MatrixXd::Zero(3, 3);
    for (int k = 0; k < 3; ++k) {
        if (!(inertia[k] > 0)) throw PreconditionViolation("moments of inertia must be positive");
        h.a(k, k) = 1.0 / inertia[k];
    }
    return h;
}

HamiltonianSpec HamiltonianSpec::identity(Index tuples) {
    return {Eigen::MatrixXd::Identity(3 * tuples, 3 * tuples)};
}

Eigen::VectorXd FieldState::stacked() const {
    Eigen::VectorXd v(3 * static_cast<Index>(tuples.size()));
    for (std::size_t k = 0; k < tuples.size(); ++k) v.segment<3>(3 * static_cast<Index>(k)) = tuples[k];
    return v;
}

FieldState FieldState::from_stacked(const Eigen::VectorXd& v, double time) {
    FieldState s;
    s.time = time;
    for (Index k = 0; k < v.size() / 3; ++k) s.tuples.push_back(v.segment<3>(3 * k));
    return s;
}

RealTensor::RealTensor(const ExtensionTensor& t) : dim(t.dim()) {
    w.resize(static_cast<std::size_t>(dim * dim * dim));
    for (Index l = 0; l < dim; ++l)
        for (Index m = 0; m < dim; ++m)
            for (Index n = 0; n < dim; ++n) w[static_cast<std::size_t>((l * dim + m) * dim + n)] = t(l, m, n).to_double();
}

FieldState eom_rhs(const RealTensor& t, const HamiltonianSpec& h, const FieldState& s) {
    const Index n = t.dim;
    if (static_cast<Index>(s.tuples.size()) != n || h.a.rows() != 3 * n || h.a.cols() != 3 * n)
        throw DimensionMismatch("state, Hamiltonian and tensor sizes disagree");
    const Eigen::VectorXd grad = h.a * s.stacked();
    FieldState out;
    out.time = s.time;
    out.tuples.assign(static_cast<std::size_t>(n), Eigen::Vector3d::Zero());
    for (Index lam = 0; lam < n; ++lam)
        for (Index mu = 0; mu < n; ++mu) {
            Eigen::Vector3d c;
            bool computed = false;
            for (Index nu = 0; nu < n; ++nu) {
                const double w = t(lam, mu, nu);
                if (w == 0) continue;
                if (!computed) {
                    c = Eigen::Vector3d(grad.segment<3>(3 * mu)).cross(s.tuples[lam]);
                    computed = true;
                }
                out.tuples[nu] += w * c;
            }
        }
    return out;
}

FieldState eom_rhs(const ExtensionTensor& t, const HamiltonianSpec& h, const FieldState& s) {
    return eom_rhs(RealTensor(t), h, s);
}

double Monitor::value(const FieldState& s) const {
    double acc = 0;
    for (Index m = 0; m < q.rows(); ++m)
        for (Index n = 0; n < q.cols(); ++n)
            if (q(m, n) != 0) acc += q(m, n) * s.tuples[m].dot(s.tuples[n]);
    return 0.5 * acc;
}

double Monitor::rate(const FieldState& s, const FieldState& ldot) const {
    double acc = 0;
    for (Index m = 0; m < q.rows(); ++m)
        for (Index n = 0; n < q.cols(); ++n)
            if (q(m, n) != 0) acc += q(m, n) * ldot.tuples[m].dot(s.tuples[n]);
    return acc;
}

double Monitor::rate_scale(const FieldState& s, const FieldState& ldot) const {
    double acc = 0;
    for (Index m = 0; m < q.rows(); ++m)
        for (Index n = 0; n < q.cols(); ++n) acc += std::abs(q(m, n)) * ldot.tuples[m].norm() * s.tuples[n].norm();
    return acc;
}

std::vector<Monitor> casimir_monitors(const ExtensionTensor& t) {
    std::vector<Monitor> out;
    int k = 0;
    for (const ExactMatrix& q : quadratic_casimir_basis(t)) {
        ++k;
        const Index n = q.rows();
        Eigen::MatrixXd re(n, n), im(n, n);
        bool complex = false;
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b) {
                re(a, b) = q(a, b).re().get_d();
                im(a, b) = q(a, b).im().get_d();
                complex = complex || !q(a, b).is_real();
            }
        if (!complex) {
            out.push_back({"C" + std::to_string(k), re});
        } else {
            out.push_back({"C" + std::to_string(k) + ".re", re});
            out.push_back({"C" + std::to_string(k) + ".im", im});
        }
    }
    return out;
}

double energy(const HamiltonianSpec& h, const FieldState& s) {
    const Eigen::VectorXd v = s.stacked();
    return 0.5 * v.dot(h.a * v);
}

TrajectoryRecord simulate(const ExtensionTensor& t, const HamiltonianSpec& h, const FieldState& s0, double dt,
                          long steps, const std::vector<Monitor>& monitors, long sample_every) {
    if (!(dt > 0)) throw PreconditionViolation("dt must be positive");
    if (steps < 0) throw PreconditionViolation("steps must be nonnegative");
    const RealTensor rt(t);
    TrajectoryRecord rec;
    rec.monitor_names.push_back("H");
    for (const Monitor& m : monitors) rec.monitor_names.push_back(m.name);
    auto values = [&](const FieldState& s) {
        std::vector<double> v{energy(h, s)};
        for (const Monitor& m : monitors) v.push_back(m.value(s));
        return v;
    };
    auto record = [&](const FieldState& s) {
        rec.samples.push_back(s);
        rec.monitor_values.push_back(values(s));
    };
    auto f = [&](const Eigen::VectorXd& y) { return eom_rhs(rt, h, FieldState::from_stacked(y)).stacked(); };

    Eigen::VectorXd y = s0.stacked();
    eom_rhs(rt, h, s0);  // size check
    record(s0);
    for (long k = 1; k <= steps; ++k) {
        const Eigen::VectorXd k1 = f(y);
        const Eigen::VectorXd k2 = f(y + 0.5 * dt * k1);
        const Eigen::VectorXd k3 = f(y + 0.5 * dt * k2);
        const Eigen::VectorXd k4 = f(y + dt * k3);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!y.allFinite()) throw NonFinite("state left the representable range at step " + std::to_string(k));
        if (k == steps || (sample_every > 0 && k % sample_every == 0))
            record(FieldState::from_stacked(y, s0.time + static_cast<double>(k) * dt));
    }
    const std::vector<double>& first = rec.monitor_values.front();
    const std::vector<double>& last = rec.monitor_values.back();
    for (std::size_t m = 0; m < first.size(); ++m)
        rec.drift.push_back(std::abs(last[m] - first[m]) / std::max(std::abs(first[m]), 1e-14));
    return rec;
}

void write_csv(std::ostream& out, const TrajectoryRecord& rec) {
    out << "time";
    const std::size_t n = rec.samples.empty() ? 0 : rec.samples.front().tuples.size();
    for (std::size_t mu = 0; mu < n; ++mu)
        for (char c : {'x', 'y', 'z'}) out << ",l" << mu << "_" << c;
    for (const std::string& name : rec.monitor_names) out << "," << name;
    out << "\n" << std::setprecision(17);
    for (std::size_t k = 0; k < rec.samples.size(); ++k) {
        const FieldState& s = rec.samples[k];
        out << s.time;
        for (const Eigen::Vector3d& v : s.tuples) out << "," << v.x() << "," << v.y() << "," << v.z();
        for (double v : rec.monitor_values[k]) out << "," << v;
        out << "\n";
    }
}

}  // namespace liex
