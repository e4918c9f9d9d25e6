#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gifs/system.hpp"

namespace gifs {

// Parsed form of a system-definition file (the `.gifs` format):
//
//   gifs 1
//   dims M p D
//   range clamp            (optional: request the Clamp range policy)
//   map <name>
//   <row 0: p*M + 1 numbers>   -- [blocks[0] | ... | blocks[p-1] | offset], row r
//   ...
//   map <name> ...
//
// `#` starts a comment that runs to end of line; blank lines are ignored.
// A leading comment of the form `# name: <text>` names the document.
// Numbers use shortest-round-trip decimal notation.
struct SystemDocument {
    int M = 0;
    int p = 0;
    double D = 0.0;
    RangePolicy policy = RangePolicy::Strict;
    std::string name;  // optional
    std::vector<std::string> map_names;
    std::vector<AffineMap> maps;

    bool operator==(const SystemDocument& other) const;
};

// Parses document text. Throws SyntaxError with 1-based line/column and a
// description of the expected token.
SystemDocument parse_document(std::string_view text);

// Serializes a document; parse_document(serialize(doc)) == doc exactly.
std::string serialize(const SystemDocument& doc);

// Builds the parsed document into a certified system. Certification failures
// (contraction, range, dimensions) are rethrown as SemanticError.
GifsSystem to_system(const SystemDocument& doc);

// parse_document followed by to_system.
GifsSystem parse_system(std::string_view text);

// The registered example systems, by name "A", "B" or "C" (case-insensitive):
// exact transcriptions of the three reference map families on [0,1]^2 with
// p = 2. A is range-certified strictly; B and C use the Clamp policy because
// their raw affine images protrude slightly below the cube. Throws
// UnknownExample for other names.
SystemDocument builtin_document(std::string_view name);
GifsSystem builtin(std::string_view name);

}  // namespace gifs
