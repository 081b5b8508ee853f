#pragma once

namespace rupert {

// Single tolerance record threaded through all modules.  Geometry
// predicates use absolute slack `geom`; rotation-matrix checks use the
// tighter `ortho`.  `ambiguity` is the band around face-parallel
// directions where shadow classification is refused instead of guessed.
struct Tolerances {
    double geom = 1e-9;
    double ortho = 1e-12;
    double ambiguity = 1e-7;
    // Interior hardening: target clearance = interior_scale * polygon
    // diameter, shift budget = shift_factor * clearance, rotation budget
    // in radians.
    double interior_scale = 1e-6;
    double shift_factor = 10.0;
    double rot_budget = 1e-3;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tols{};
    return tols;
}

} // namespace rupert
