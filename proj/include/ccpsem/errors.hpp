#ifndef CCPSEM_ERRORS_HPP
#define CCPSEM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccpsem {

// Base of every domain error raised by the library. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class UnknownSymbol : public Error {
public:
  explicit UnknownSymbol(const std::string& symbol);
  const std::string& symbol() const { return symbol_; }

private:
  std::string symbol_;
};

class TypeMismatch : public Error {
public:
  TypeMismatch(const std::string& expected, const std::string& actual,
               const std::string& where = {});
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }

private:
  std::string expected_;
  std::string actual_;
};

struct UnmappedBasicType : Error { using Error::Error; };
struct MissingEntry : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct DegenerateSpan : Error { using Error::Error; };
struct UnassignedConstant : Error { using Error::Error; };
struct RankMismatch : Error { using Error::Error; };
struct UnknownWord : Error { using Error::Error; };
struct BackendMismatch : Error { using Error::Error; };
struct NotBinary : Error { using Error::Error; };

}  // namespace ccpsem

#endif
