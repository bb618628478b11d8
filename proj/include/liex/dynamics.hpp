#pragma once

#include "liex/extension.hpp"

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace liex {

// H = 1/2 l^T A l on the stacked components (l^0_x, l^0_y, l^0_z, l^1_x, ...)
struct HamiltonianSpec {
    Eigen::MatrixXd a;

    static HamiltonianSpec rigid_body(const std::array<double, 3>& inertia);
    // 1/2 sum_mu |l^mu|^2
    static HamiltonianSpec identity(Index tuples);
    Index tuples() const { return a.rows() / 3; }
};

struct FieldState {
    std::vector<Eigen::Vector3d> tuples;
    double time = 0;

    Eigen::VectorXd stacked() const;
    static FieldState from_stacked(const Eigen::VectorXd& v, double time = 0);
};

// real copy of an exact tensor for the integrator
struct RealTensor {
    Index dim = 0;
    std::vector<double> w;

    explicit RealTensor(const ExtensionTensor& t);
    double operator()(Index l, Index m, Index n) const { return w[static_cast<std::size_t>((l * dim + m) * dim + n)]; }
};

// dl^nu/dt = sum_{lam,mu} W_lam^{mu nu} (dH/dl^mu x l^lam)
FieldState eom_rhs(const RealTensor& t, const HamiltonianSpec& h, const FieldState& s);
FieldState eom_rhs(const ExtensionTensor& t, const HamiltonianSpec& h, const FieldState& s);

struct Monitor {
    std::string name;
    Eigen::MatrixXd q;  // C_Q = 1/2 sum Q_{mu nu} <l^mu, l^nu>
    double value(const FieldState& s) const;
    // dC_Q/dt along ldot
    double rate(const FieldState& s, const FieldState& ldot) const;
    // sum |Q_{mu nu}| |ldot^mu| |l^nu|, the scale rate() is compared against
    double rate_scale(const FieldState& s, const FieldState& ldot) const;
};

// quadratic_casimir_basis lifted to monitors; complex forms give a real and an imaginary monitor
std::vector<Monitor> casimir_monitors(const ExtensionTensor& t);

double energy(const HamiltonianSpec& h, const FieldState& s);

struct TrajectoryRecord {
    std::vector<FieldState> samples;
    std::vector<std::string> monitor_names;  // "H" first
    std::vector<std::vector<double>> monitor_values;  // per sample
    std::vector<double> drift;  // per monitor
};

// classical RK4; samples every `sample_every` steps plus the final state
TrajectoryRecord simulate(const ExtensionTensor& t, const HamiltonianSpec& h, const FieldState& s0, double dt,
                          long steps, const std::vector<Monitor>& monitors, long sample_every = 0);

void write_csv(std::ostream& out, const TrajectoryRecord& rec);

}  // namespace liex
