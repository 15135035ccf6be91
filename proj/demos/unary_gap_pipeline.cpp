// Decides reachability in a small digraph by encoding it as a unary length
// and running the unary two-way automaton A_n on it, without a tape.
#include <iostream>

#include <twfa/unary_gap.hpp>

int main() {
	using namespace twfa;
	digraph g{4, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 1}}};
	for (auto [i, j] : g.edges)
		std::cout << "edge (" << i << "," << j << ") -> prime " << edge_prime(i, j, g.n) << '\n';
	const unary_length m = encode_graph(g);
	std::cout << "m = " << m << " = " << format_prime_encoding(prime_encode(m)) << '\n';

	const auto A = build_unary_gap_2nfa(g.n);
	const auto G = build_endmarker_config_graph(A, m);
	std::cout << "A_" << g.n << ": " << A.num_states() << " states; G(m): " << G.adj.size() << " vertices, "
			  << G.num_edges() << " edges\n";
	std::cout << "A_n accepts a^m: " << (G.accepts() ? "yes" : "no") << '\n';
	std::cout << "breadth-first search: " << (bfs_gap(g) ? "yes" : "no") << '\n';

	dnc_recognizer dnc(A);
	std::cout << "divide and conquer: " << (dnc.accepts(m) ? "yes" : "no") << " (" << dnc.memo_size()
			  << " memo entries)\n";
}
