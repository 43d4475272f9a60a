#ifndef ERLOSS_ERRORS_HPP
#define ERLOSS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace erloss {

// Convergence or representability failure in an otherwise valid computation.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature did not converge within the refinement budget; carries the
// last two successive estimates (the bracket at the point of failure).
class quadrature_error : public numeric_error {
public:
    quadrature_error(const std::string& what, double previous, double last)
        : numeric_error(what), previous_estimate(previous), last_estimate(last) {}

    double previous_estimate;
    double last_estimate;
};

}  // namespace erloss

#endif
