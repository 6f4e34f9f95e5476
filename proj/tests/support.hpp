#ifndef MKOSZUL_TESTS_SUPPORT_HPP
#define MKOSZUL_TESTS_SUPPORT_HPP

#include <random>
#include <string>

#include "mkoszul/presentation.hpp"

namespace testsupport {

inline std::string random_word(std::mt19937_64& rng, int d, int len) {
    static const char* names[] = {"x", "y", "z", "w"};
    std::string s;
    for (int k = 0; k < len; ++k) {
        if (k) s += "*";
        s += names[rng() % d];
    }
    return s;
}

inline std::string gens_line(int d) {
    static const char* names[] = {"x", "y", "z", "w"};
    std::string s = "gens";
    for (int k = 0; k < d; ++k) s += std::string(" ") + names[k];
    return s;
}

// random presentation text; coefficients in {-2..2} when `generic`
inline std::string random_presentation(std::mt19937_64& rng, int d, const std::vector<int>& degrees, int max_rels, bool generic) {
    std::string s = "field Q\n" + gens_line(d) + "\n";
    for (int deg : degrees) {
        int count = 1 + (int)(rng() % max_rels);
        for (int r = 0; r < count; ++r) {
            s += "rel " + random_word(rng, d, deg);
            if (generic) {
                int extra = (int)(rng() % 2);
                for (int e = 0; e < extra; ++e) {
                    int c = (int)(rng() % 4) - 2;
                    if (c == 0) c = 1;
                    s += (c < 0 ? " - " : " + ") + std::to_string(std::abs(c)) + "*" + random_word(rng, d, deg);
                }
            }
            s += "\n";
        }
    }
    return s;
}

}  // namespace testsupport

#endif
