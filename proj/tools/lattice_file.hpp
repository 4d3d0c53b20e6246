#pragma once

#include <optional>
#include <string>

#include "dyadic/bong.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/lattice.hpp"

namespace dyadic::cli {

class ParseError : public InvalidInput {
public:
    ParseError(int line, int col, const std::string& msg)
        : InvalidInput(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

struct LatticeInput {
    Field field;
    std::optional<Matrix> gram;
    std::optional<GoodBong> bong;  // set when the file gives a BONG directly
    Lattice lattice;               // the Gram lattice, or the one rebuilt from the BONG
};

// `field = ...` then `gram = [[...]]` or `bong = [...]`; a JSON object with the same keys is accepted too.
// fallback_field is used when the text has no field line; a conflicting field line is an error.
LatticeInput parse_lattice(const std::string& text, const std::optional<Field>& fallback_field = std::nullopt);
LatticeInput read_lattice_file(const std::string& path, const std::optional<Field>& fallback_field = std::nullopt);
// canonical text form accepted by parse_lattice
std::string to_text(const LatticeInput& in);

}  // namespace dyadic::cli
