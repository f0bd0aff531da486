#include "pqe/errors.hpp"

#include <utility>

namespace pqe {

parse_error::parse_error(std::string source, std::size_t line, std::string const& what)
    : input_error(source + ":" + std::to_string(line) + ": " + what),
      m_source(std::move(source)),
      m_line(line)
{}

encoding_error::encoding_error(std::size_t byte_offset, std::string const& what)
    : input_error(what + " at byte offset " + std::to_string(byte_offset)), m_offset(byte_offset)
{}

}  // namespace pqe
