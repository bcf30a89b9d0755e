#include "splinequad/errors.hpp"

namespace splinequad {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_interval: return "invalid-interval";
        case ErrorKind::zero_subintervals: return "zero-subintervals";
        case ErrorKind::index_out_of_range: return "index-out-of-range";
        case ErrorKind::point_outside_domain: return "point-outside-domain";
        case ErrorKind::interval_index_out_of_range: return "interval-index-out-of-range";
        case ErrorKind::negative_discriminant: return "negative-discriminant";
        case ErrorKind::root_outside_interval: return "root-outside-interval";
        case ErrorKind::invariant_violation: return "invariant-violation";
        case ErrorKind::nonpositive_weight: return "nonpositive-weight";
        case ErrorKind::system_residual_too_large: return "system-residual-too-large";
        case ErrorKind::negative_bound: return "negative-bound";
        case ErrorKind::invalid_argument: return "invalid-argument";
    }
    return "unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& message, std::optional<int> interval) {
    std::string out(to_string(kind));
    if (interval) {
        out += " (interval " + std::to_string(*interval) + ")";
    }
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<int> interval)
    : std::runtime_error(format_message(kind, message, interval)), kind_(kind), interval_(interval) {}

}  // namespace splinequad
