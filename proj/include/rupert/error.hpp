#pragma once

#include <stdexcept>
#include <string>

namespace rupert {

enum class Errc {
    degenerate_input,
    infeasible_input,
    invalid_direction,
    ambiguous_classification,
    not_hexagon,
    vertex_not_corner_candidate,
    face_parallel_direction,
    construction_failed,
    cannot_harden,
    does_not_fit,
    steep_plane,
    not_a_cross_section,
    lift_degenerate,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::degenerate_input: return "DegenerateInput";
        case Errc::infeasible_input: return "InfeasibleInput";
        case Errc::invalid_direction: return "InvalidDirection";
        case Errc::ambiguous_classification: return "AmbiguousClassification";
        case Errc::not_hexagon: return "NotHexagon";
        case Errc::vertex_not_corner_candidate: return "VertexNotCornerCandidate";
        case Errc::face_parallel_direction: return "FaceParallelDirection";
        case Errc::construction_failed: return "ConstructionFailed";
        case Errc::cannot_harden: return "CannotHarden";
        case Errc::does_not_fit: return "DoesNotFit";
        case Errc::steep_plane: return "SteepPlane";
        case Errc::not_a_cross_section: return "NotACrossSection";
        case Errc::lift_degenerate: return "LiftDegenerate";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace rupert
