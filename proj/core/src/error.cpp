#include "kgsim/error.hpp"

namespace kgsim {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

NotFoundError::NotFoundError(const std::string& node)
    : Error("node not found: " + node), node_(node) {}

}  // namespace kgsim
