#pragma once

#include <stdexcept>
#include <string>

namespace lpsw {

// Thrown when a composition or a solver step would evaluate a singular
// nonlinearity: min over the evaluation grid of 1+q fell at or below the
// vacuum threshold. Carries the offending minimum.
class vacuum_error : public std::domain_error {
public:
    vacuum_error(double min_density, double threshold)
        : std::domain_error("density 1+q reached " + std::to_string(min_density) +
                            " (vacuum threshold " + std::to_string(threshold) + ")"),
          min_density_(min_density), threshold_(threshold) {}

    double min_density() const { return min_density_; }
    double threshold() const { return threshold_; }

private:
    double min_density_;
    double threshold_;
};

// Thrown when a requested frequency cutoff cannot be met on the grid
// (e.g. a low-frequency tail target unreachable at this resolution).
class resolution_error : public std::runtime_error {
public:
    explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an integration produced a non-finite coefficient or a velocity
// past the divergence guard; carries the last healthy time.
class blowup_error : public std::runtime_error {
public:
    blowup_error(const std::string& what, double time)
        : std::runtime_error(what + " at t = " + std::to_string(time)), time_(time) {}

    double time() const { return time_; }

private:
    double time_;
};

// Thrown when a proposed time step violates the advective stability bound
// of the truncated system.
class step_size_error : public std::invalid_argument {
public:
    step_size_error(double dt, double dt_max)
        : std::invalid_argument("time step " + std::to_string(dt) +
                                " exceeds stability bound " + std::to_string(dt_max)),
          dt_(dt), dt_max_(dt_max) {}

    double dt() const { return dt_; }
    double dt_max() const { return dt_max_; }

private:
    double dt_;
    double dt_max_;
};

}  // namespace lpsw
