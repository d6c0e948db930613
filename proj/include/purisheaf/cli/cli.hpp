#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "purisheaf/exact/scalar.hpp"
#include "purisheaf/sheafp1/expr.hpp"

namespace purisheaf::cli {

inline constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string field = "q";  ///< "q" or "fp:<prime>"
  std::uint64_t seed = 1;
  bool json = false;
  friend bool operator==(const Options&, const Options&) = default;
};

/// `q` or `fp:<prime>`; anything else is a ParseError.
exact::Field parseField(std::string_view text);

/// 0 -> A -> B -> C -> 0; the outer zeros are optional.
struct SequenceExpr {
  sheaf::SheafExpr a, b, c;
  friend bool operator==(const SequenceExpr&, const SequenceExpr&) = default;
};
SequenceExpr parseSequence(std::string_view text);
std::string printSequence(const SequenceExpr& s);

/// A parsed invocation. Arguments are kept in canonical printed form.
struct Command {
  std::string name;
  std::vector<std::string> args;
  Options opts;
  friend bool operator==(const Command&, const Command&) = default;
};

const std::vector<std::string>& commandNames();

/// argv without the program name. Malformed input raises ParseError; its
/// offset is relative to the offending argument.
Command parseCommand(const std::vector<std::string>& argv);
std::vector<std::string> printCommand(const Command& c);

struct Report {
  nlohmann::ordered_json record;  ///< command, inputs, result, certificates, provenance
  std::string text;
};
/// Throws MathError from the library modules.
Report run(const Command& c);

/// Full front end: 0 ok, 1 mathematical error, 2 parse error.
int runMain(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace purisheaf::cli
