#pragma once

#include <stdexcept>

#include "sedh/vec3.hpp"

namespace sedh {

/// |S| for a spin-1/2 electron in hbar units: sqrt(3)/2.
inline constexpr double spin_magnitude = 0.86602540378443864676;

/// Position fell below the configured floor; the Coulomb singularity is
/// excluded from the model, so integration aborts with a diagnostic instead
/// of overflowing.
class SingularPositionError : public std::runtime_error {
public:
    explicit SingularPositionError(double r)
        : std::runtime_error("electron radius below singularity floor"), radius(r) {}
    double radius;
};

/// Dimensionless physical parameters in Bohr units (lengths a0, times tau0).
/// Z is stored as a real to allow coupling-scaling experiments.
struct PhysicalParams {
    double z = 3.0;
    double alpha = 1.0 / 137.036;
    double beta = 0.0;   // sqrt(2/3) Z alpha^{3/2}; radiation coupling
    double za2 = 0.0;    // Z^2 alpha^2; relativistic correction scale
    double tau_c = 0.0;  // Compton cutoff time, equals za2 in these units

    static PhysicalParams make(double z, double alpha);
};

/// Radiation coupling beta = sqrt(2/3) Z alpha^{3/2}.
double beta_coupling(double z, double alpha);

/// Bohr time unit tau0 = hbar / (Z^2 alpha^2 m_e c^2) in seconds.
double bohr_time_seconds(const PhysicalParams& p);

/// Electron state in Bohr units. Spin is in hbar units with |S| = sqrt(3)/2.
struct ElectronState {
    Vec3 r;
    Vec3 v;
    Vec3 s;
    double t = 0.0;
};

struct HamiltonianTerms {
    bool p4 = true;
    bool spin_orbit = true;
};

/// Dimensionless energy: 1/2 v^2 - 1/r - (za2/8) v^4 + (za2/2) (L.S)/r^3,
/// with the momentum identified with the velocity. Throws
/// SingularPositionError below r_floor.
double hamiltonian(const ElectronState& state, const PhysicalParams& p,
                   HamiltonianTerms terms = {}, double r_floor = 1e-6);

/// Angular frequency of the bound Kepler orbit with energy E: (2|E|)^{3/2}.
/// Throws std::domain_error for E >= 0.
double kepler_frequency(double energy);

inline Vec3 angular_momentum(const ElectronState& st) { return cross(st.r, st.v); }
inline Vec3 total_j(const ElectronState& st) { return angular_momentum(st) + st.s; }

}  // namespace sedh
