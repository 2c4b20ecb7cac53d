#ifndef SEGREG_BENCHMARKS_HPP
#define SEGREG_BENCHMARKS_HPP

#include <string>
#include <vector>

#include "segreg/dynamics.hpp"

namespace segreg {

/// Catalog of benchmark problems, all on a = 1.
///
/// m_override selects the component count for entries that allow it
/// ("all_zero"); pass 0 to take each entry's default. Unknown names fail
/// with "no such benchmark".
ProblemSpec get_benchmark(const std::string& name, int m_override = 0);

std::vector<std::string> benchmark_names();

/// One-line description, or empty string for unknown names.
std::string benchmark_description(const std::string& name);

} // namespace segreg

#endif
