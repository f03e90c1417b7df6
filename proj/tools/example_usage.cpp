// Small tour of the library: cumulants, the moment expansion, and the
// cumulant morphism on a few words.

#include <iostream>

#include "opfree/opfree.hpp"

int main() {
    using namespace opfree;

    std::cout << "kappa_3 = " << to_string(cumulant_schema(3)) << "\n\n";

    const auto args = letter_args(3);
    for (const NCPartition& p : enumerate_nc(3)) {
        std::cout << to_string(p) << "  " << to_string(multiplicative_eval(p, MapFamily::cumulant(), args)) << "\n";
    }
    std::cout << "sum equals E(a1 a2 a3): " << std::boolalpha
              << (moment_from_cumulants(3, args) == expectation(Poly::letter(1) * Poly::letter(2) * Poly::letter(3)))
              << "\n\n";

    for (const char* text : {"***", "a1*a2", "a1**a2", "*a1"}) {
        const Word w = parse_word(text);
        std::cout << "k(" << text << ") = " << to_string(cumulant_restriction(w)) << "   [" << to_string(classify(w))
                  << "]\n";
    }
}
