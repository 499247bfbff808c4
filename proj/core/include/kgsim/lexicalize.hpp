#pragma once

#include <string>
#include <string_view>

#include "kgsim/graph_store.hpp"

namespace kgsim {

/// Renders a node as a sentence for text embedding:
///   "<label>, <description>. <label> <property label> <object label>. ..."
/// one clause per outgoing non-metadata edge in ingestion order. Missing
/// labels fall back to raw ids; a node with nothing to say yields its id.
std::string lexicalize(const GraphStore& store, std::string_view node);

}  // namespace kgsim
