#include "coarsekit/step_function.hpp"

namespace coarsekit {

StepFunction sum_functions(const StepFunction& f, const StepFunction& g) {
    if (f.size() != g.size())
        throw std::invalid_argument("sum_functions: window mismatch");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values[i] + g.values[i];
    return StepFunction(std::move(v), f.lo + g.lo, f.hi + g.hi);
}

}  // namespace coarsekit
