// Prints how many states each witness construction needs, next to the size
// of the minimal one-way DFA for the same language.
#include <iostream>
#include <vector>

#include <twfa/report.hpp>

int main() {
	using namespace twfa;
	std::vector<family_spec> specs;
	for (unsigned n = 1; n <= 5; ++n) {
		specs.push_back({family::I, n, variant::one_way_nfa});
		specs.push_back({family::I, n, variant::two_way_one_reversal});
	}
	for (unsigned n = 1; n <= 4; ++n)
		for (variant v : {variant::one_way_nfa, variant::two_way_improved, variant::sweeping_linear, variant::rotating})
			specs.push_back({family::L, n, v});
	std::cout << format_table(report_state_counts(specs));
}
