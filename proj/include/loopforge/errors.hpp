#pragma once

#include <stdexcept>
#include <string>

namespace loopforge
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent arguments (degree mismatch, point out of range).
class InputError : public Error
{
public:
  using Error::Error;
};

// Cycle notation or JSON that cannot be read.
class ParseError : public Error
{
public:
  ParseError(std::string const &msg, std::size_t pos)
    : Error(msg + " (at position " + std::to_string(pos) + ")"), _pos(pos)
  {}

  explicit ParseError(std::string const &msg)
    : Error(msg), _pos(std::string::npos)
  {}

  std::size_t position() const { return _pos; }

private:
  std::size_t _pos;
};

// A configured element/node limit was exceeded.
class ResourceError : public Error
{
public:
  using Error::Error;
};

// A loop could not be built from the supplied translations.
class ConstructionError : public Error
{
public:
  ConstructionError(std::string const &msg, unsigned i, unsigned j)
    : Error(msg), first(i), second(j)
  {}

  unsigned first;
  unsigned second;
};

} // namespace loopforge
