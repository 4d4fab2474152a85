#pragma once

#include <iosfwd>
#include <string>

#include "pabp/graph.hpp"

namespace pabp {

/// Text format, bit-exact:
///   pa-graph v1 t=<t> m=<m> delta=<float>
/// followed by one "<source> <target>" pair per line in creation order.
void save_graph(const PAGraph& g, std::ostream& out);
void save_graph(const PAGraph& g, const std::string& path);

/// Rejects malformed headers, out-of-range ids, source < target, and edge
/// counts different from m t. Throws std::runtime_error.
PAGraph load_graph(std::istream& in);
PAGraph load_graph(const std::string& path);

}  // namespace pabp
