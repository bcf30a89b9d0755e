#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace splinequad {

enum class ErrorKind {
    invalid_interval,
    zero_subintervals,
    index_out_of_range,
    point_outside_domain,
    interval_index_out_of_range,
    negative_discriminant,
    root_outside_interval,
    invariant_violation,
    nonpositive_weight,
    system_residual_too_large,
    negative_bound,
    invalid_argument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library error. Failures raised while running the node recursion carry the
/// index of the subinterval being processed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<int> interval = std::nullopt);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::optional<int> interval() const noexcept { return interval_; }

private:
    ErrorKind kind_;
    std::optional<int> interval_;
};

}  // namespace splinequad
