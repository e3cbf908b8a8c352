#include "sedh/units.hpp"

#include <cmath>

namespace sedh {

namespace {
// CODATA 2018
constexpr double hbar_si = 1.054571817e-34;        // J s
constexpr double electron_rest_energy = 8.1871057769e-14;  // J
}  // namespace

double beta_coupling(double z, double alpha) {
    return std::sqrt(2.0 / 3.0) * z * std::pow(alpha, 1.5);
}

PhysicalParams PhysicalParams::make(double z, double alpha) {
    PhysicalParams p;
    p.z = z;
    p.alpha = alpha;
    p.beta = beta_coupling(z, alpha);
    p.za2 = z * z * alpha * alpha;
    p.tau_c = p.za2;
    return p;
}

double bohr_time_seconds(const PhysicalParams& p) {
    return hbar_si / (p.za2 * electron_rest_energy);
}

double hamiltonian(const ElectronState& state, const PhysicalParams& p,
                   HamiltonianTerms terms, double r_floor) {
    double rn = norm(state.r);
    if (rn < r_floor) throw SingularPositionError(rn);
    double p2 = norm2(state.v);
    double e = 0.5 * p2 - 1.0 / rn;
    if (terms.p4) e -= (p.za2 / 8.0) * p2 * p2;
    if (terms.spin_orbit) {
        e += (p.za2 / 2.0) * dot(angular_momentum(state), state.s) / (rn * rn * rn);
    }
    return e;
}

double kepler_frequency(double energy) {
    if (energy >= 0.0) throw std::domain_error("unbound orbit has no Keplerian frequency");
    return std::pow(-2.0 * energy, 1.5);
}

}  // namespace sedh
