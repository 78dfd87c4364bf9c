#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freeatom {

  // Base of every error the library throws.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed term text or algebra file. `position` is a byte offset for
  // term text and a 1-based line number for algebra files.
  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t position)
        : Error(what), _position(position) {}

    std::size_t position() const noexcept {
      return _position;
    }

   private:
    std::size_t _position;
  };

  class ArityError : public ParseError {
   public:
    using ParseError::ParseError;
  };

  class UnknownSymbolError : public ParseError {
   public:
    using ParseError::ParseError;
  };

  // A configured size cap was hit. `reached` is how far the computation got.
  class CapExceeded : public Error {
   public:
    CapExceeded(std::string const& what, std::size_t reached)
        : Error(what), _reached(reached) {}

    std::size_t reached() const noexcept {
      return _reached;
    }

   private:
    std::size_t _reached;
  };

  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  class EvaluationError : public Error {
   public:
    using Error::Error;
  };

  // A presentation whose switching term fails on some generator.
  class SwitchingTermError : public Error {
   public:
    using Error::Error;
  };

}  // namespace freeatom
