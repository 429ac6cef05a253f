#pragma once

#include "pgx/word.hpp"

#include <string>
#include <vector>

namespace pgx {

// Finite presentation: abstract generators and relator words.
struct FpPresentation {
    std::vector<std::string> names;
    std::vector<Word> relators;

    int ngens() const { return static_cast<int>(names.size()); }
    int gen_index(const std::string& name) const;
};

// Text format:
//   generators: x, y
//   relator: x^5
//   relator: [y,x]*y^-1
FpPresentation parse_fp_presentation(const std::string& text);

} // namespace pgx
