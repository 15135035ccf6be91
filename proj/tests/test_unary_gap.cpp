#include <catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>

#include <twfa/analysis.hpp>
#include <twfa/text_format.hpp>
#include <twfa/unary_gap.hpp>

#include "oracles.hpp"

using namespace twfa;

namespace {

bool is_prime_slow(std::uint64_t x) {
	if (x < 2)
		return false;
	for (std::uint64_t d = 2; d * d <= x; ++d)
		if (x % d == 0)
			return false;
	return true;
}

// Warshall closure: is n-1 reachable from 0?
bool closure_gap(const digraph& g) {
	std::vector<std::vector<char>> r(g.n, std::vector<char>(g.n, 0));
	for (std::size_t i = 0; i < g.n; ++i)
		r[i][i] = 1;
	for (auto [i, j] : g.edges)
		r[i][j] = 1;
	for (std::size_t k = 0; k < g.n; ++k)
		for (std::size_t i = 0; i < g.n; ++i)
			for (std::size_t j = 0; j < g.n; ++j)
				if (r[i][k] && r[k][j])
					r[i][j] = 1;
	return r[0][g.n - 1];
}

digraph graph_from_mask(std::size_t n, unsigned mask) {
	digraph g{n, {}};
	for (std::size_t e = 0; e < n * n; ++e)
		if (mask >> e & 1)
			g.edges.emplace(e / n, e % n);
	return g;
}

digraph sample_graph() { return digraph{4, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 1}}}; }

bool heads_inward(const two_way_machine& m, state_id q, side s) {
	return oracle::heads_inward(m, q, s == side::left);
}

std::optional<state_id> literal_landing(const two_way_machine& m, state_id q, side s, std::size_t len) {
	return oracle::literal_traversal(m, q, s == side::left, len);
}

} // namespace

TEST_CASE("nth prime") {
	CHECK(nth_prime(1) == 2);
	CHECK(nth_prime(7) == 17);
	CHECK(nth_prime(14) == 43);
	std::uint64_t x = 1;
	for (std::size_t k = 1; k <= 100; ++k) {
		do
			++x;
		while (!is_prime_slow(x));
		REQUIRE(nth_prime(k) == x);
	}
	CHECK_THROWS_AS(nth_prime(0), std::invalid_argument);
	CHECK_THROWS_AS(nth_prime(101), prime_budget_exceeded);
	prime_table big(5000);
	CHECK(big.nth(5000) == 48611);
}

TEST_CASE("edge primes of K_4") {
	CHECK(edge_prime(0, 0, 4) == 2);
	CHECK(edge_prime(0, 1, 4) == 3);
	CHECK(edge_prime(1, 0, 4) == 11);
	CHECK(edge_prime(1, 2, 4) == 17);
	CHECK(edge_prime(2, 3, 4) == 37);
	CHECK(edge_prime(3, 1, 4) == 43);
	std::set<std::uint64_t> seen;
	for (std::size_t i = 0; i < 4; ++i)
		for (std::size_t j = 0; j < 4; ++j)
			seen.insert(edge_prime(i, j, 4));
	CHECK(seen.size() == 16);
	CHECK_THROWS_AS(edge_prime(4, 0, 4), std::invalid_argument);
}

TEST_CASE("graph encoding") {
	CHECK(encode_graph(sample_graph()) == 892551);
	CHECK(encode_graph(digraph{3, {}}) == 1);
	CHECK(encode_graph(graph_from_mask(2, 0xF)) == 210);
	CHECK(decode_graph(892551, 4) == sample_graph());
	CHECK(decode_graph(1, 3).edges.empty());
	CHECK(decode_graph(6, 2) == digraph{2, {{0, 0}, {0, 1}}});
	CHECK_THROWS_AS(decode_graph(0, 2), std::invalid_argument);
}

TEST_CASE("decode inverts encode on every graph with up to three vertices") {
	for (std::size_t n = 1; n <= 3; ++n)
		for (unsigned mask = 0; mask < (1u << (n * n)); ++mask) {
			auto g = graph_from_mask(n, mask);
			REQUIRE(decode_graph(encode_graph(g), n) == g);
		}
}

TEST_CASE("encoding grows strictly with every added edge") {
	for (unsigned mask = 0; mask < 512; ++mask) {
		auto g = graph_from_mask(3, mask);
		for (std::size_t e = 0; e < 9; ++e)
			if (!(mask >> e & 1)) {
				auto h = graph_from_mask(3, mask | 1u << e);
				CHECK(encode_graph(g) < encode_graph(h));
			}
	}
}

TEST_CASE("BFS reachability") {
	CHECK(bfs_gap(sample_graph()));
	CHECK_FALSE(bfs_gap(digraph{2, {}}));
	CHECK(bfs_gap(digraph{1, {}}));
	for (unsigned mask = 0; mask < 512; ++mask) {
		auto g = graph_from_mask(3, mask);
		REQUIRE(bfs_gap(g) == closure_gap(g));
	}
}

TEST_CASE("graph text format") {
	auto g = parse_graph("# sample graph\nn 4\nedge 3 1\nedge 0 1\nedge 1 0\nedge 1 2\nedge 2 3\n");
	CHECK(g == sample_graph());
	CHECK(parse_graph(serialize(g)) == g);
	CHECK_THROWS_AS(parse_graph("edge 0 1\n"), format_error);
	CHECK_THROWS_AS(parse_graph("n 2\nedge 0 5\n"), format_error);
	CHECK_THROWS_AS(parse_graph("n 2\nvertex 0\n"), format_error);
	CHECK_THROWS_AS(parse_graph("n 0\n"), format_error);
}

TEST_CASE("prime power encoding") {
	auto sorted = [](std::vector<unary_length> v) {
		std::sort(v.begin(), v.end());
		return v;
	};
	CHECK(sorted(prime_encode(892551)) == std::vector<unary_length>{3, 11, 17, 37, 43});
	CHECK(prime_encode(1).empty());
	CHECK(sorted(prime_encode(360)) == std::vector<unary_length>{5, 8, 9});
	CHECK(prime_decode({9, 8, 5}) == 360);
	CHECK(format_prime_encoding(prime_encode(360)) == "8#9#5");
	CHECK(parse_prime_encoding("8#9#5") == std::vector<unary_length>{8, 9, 5});
	CHECK(parse_prime_encoding("").empty());
	CHECK_THROWS_AS(parse_prime_encoding("8##5"), format_error);
	CHECK_THROWS_AS(parse_unary_length("-3"), format_error);
	for (std::uint64_t m = 1; m <= 3000; ++m)
		REQUIRE(prime_decode(prime_encode(m)) == m);
	unary_length big = unary_length(1000003) * 32;
	CHECK(sorted(prime_encode(big)) == std::vector<unary_length>{32, 1000003});
	unary_length mersenne = (unary_length(1) << 61) - 1;
	CHECK(sorted(prime_encode(mersenne * 9)) == std::vector<unary_length>{9, mersenne});
	CHECK_THROWS_AS(prime_encode(unary_length(1000003) * 1000033 * 1000037), error);
	CHECK(parse_unary_length("123456789012345678901234567890") == unary_length("123456789012345678901234567890"));
}

TEST_CASE("A_n shape") {
	CHECK(build_unary_gap_2nfa(2).num_states() == 36);
	CHECK(build_unary_gap_2nfa(3).num_states() == 202);
	CHECK(build_unary_gap_2nfa(4).num_states() == 764);
	for (std::size_t n = 2; n <= 4; ++n) {
		auto a = build_unary_gap_2nfa(n);
		CHECK(validate(a).empty());
		CHECK(a.start() == start_cell::cell0);
		CHECK(is_outer_nondeterministic(a).holds);
		CHECK(a.num_states() <= 3 * n * n * nth_prime(n * n));
	}
	CHECK_THROWS(build_unary_gap_2nfa(1));
}

TEST_CASE("A_2 accepts exactly the multiples of three") {
	auto a = build_unary_gap_2nfa(2);
	CHECK(accepts_unary(a, 3));
	CHECK_FALSE(accepts_unary(a, 4));
	for (std::size_t m = 1; m <= 100; ++m) {
		REQUIRE(accepts_unary(a, m) == (m % 3 == 0));
		REQUIRE(accepts_unary(a, m) == closure_gap(decode_graph(m, 2)));
	}
}

TEST_CASE("A_n agrees with a literal configuration search on short tapes") {
	for (std::size_t n = 2; n <= 3; ++n) {
		auto a = build_unary_gap_2nfa(n);
		for (std::size_t m = 0; m <= 60; ++m)
			REQUIRE(accepts_unary(a, m) == accepts_nondeterministic(a, word(m, 0)));
	}
}

TEST_CASE("A_n agrees with the GAP oracle") {
	for (std::size_t n = 2; n <= 4; ++n) {
		auto a = build_unary_gap_2nfa(n);
		unary_sweeper sw(a);
		for (std::uint64_t m = 1; m <= 2000; ++m)
			REQUIRE(build_endmarker_config_graph(a, m, sw).accepts() == closure_gap(decode_graph(m, n)));
	}
}

TEST_CASE("sweep landing on a counting loop") {
	auto a = build_unary_gap_2nfa(2);
	auto r01 = *a.find_state("r0_1_0");
	CHECK(sweep_landing(a, r01, side::left, 892551) == a.find_state("r0_1_0"));
	CHECK(sweep_landing(a, r01, side::left, 892552) == a.find_state("r0_1_1"));
	CHECK(sweep_landing(a, r01, side::left, 0) == r01);
	auto l = *a.find_state("l1_1_0");
	CHECK(sweep_landing(a, l, side::right, 16) == a.find_state("l1_1_2"));
}

TEST_CASE("sweep landing equals the literal tape walk") {
	for (std::size_t n = 2; n <= 4; ++n) {
		auto a = build_unary_gap_2nfa(n);
		unary_sweeper sw(a);
		for (state_id q = 0; q < a.num_states(); ++q)
			for (side s : {side::left, side::right})
				for (std::size_t m = 0; m <= 500; m += (n == 4 ? 7 : 1))
					if (heads_inward(a, q, s))
						REQUIRE(sw.landing(q, s, m) == literal_landing(a, q, s, m));
	}
}

TEST_CASE("sweep landing handles large lengths quickly") {
	auto a = build_unary_gap_2nfa(4);
	unary_sweeper sw(a);
	for (state_id q = 0; q < a.num_states(); ++q)
		if (heads_inward(a, q, side::left))
			sw.landing(q, side::left, 1);
	const unary_length huge("1000000000000000000000000000000000000000000001");
	const auto start = std::chrono::steady_clock::now();
	for (state_id q = 0; q < a.num_states(); ++q) {
		if (!heads_inward(a, q, side::left))
			continue;
		auto land = sw.landing(q, side::left, huge);
		auto name = a.state_name(q);
		if (name.starts_with("r")) {
			std::size_t i = 0, j = 0, k = 0;
			std::sscanf(name.c_str(), "r%zu_%zu_%zu", &i, &j, &k);
			auto p = edge_prime(i, j, 4);
			auto expect = "r" + std::to_string(i) + "_" + std::to_string(j) + "_" +
				std::to_string(static_cast<std::uint64_t>((huge + k) % p));
			REQUIRE(land == a.find_state(expect));
		}
	}
	const auto per_sweep =
		std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / a.num_states();
	CHECK(per_sweep < 1e-3);
	CHECK(accepts_unary(a, 892551));
}

TEST_CASE("sweeps through nondeterminism or inner reversals are refused") {
	two_way_machine m(alphabet({"a"}), std::vector<std::string>{"p", "q"});
	m.set_start_cell(start_cell::cell0);
	m.add_transition(0, tape_symbol::of(0), 0, move::right);
	m.add_transition(0, tape_symbol::of(0), 1, move::right);
	CHECK(sweep_landing(m, 0, side::left, 0) == 0);
	CHECK_THROWS_AS(sweep_landing(m, 0, side::left, 5), not_quasi_sweeping);

	two_way_machine z(alphabet({"a"}), std::vector<std::string>{"p", "q"});
	z.add_transition(0, tape_symbol::of(0), 1, move::right);
	z.add_transition(1, tape_symbol::of(0), 0, move::left);
	CHECK_THROWS_AS(sweep_landing(z, 0, side::left, 5), not_quasi_sweeping);

	two_way_machine h(alphabet({"a"}), std::vector<std::string>{"p"});
	CHECK_FALSE(sweep_landing(h, 0, side::left, 5));
	CHECK_THROWS(build_endmarker_config_graph(z, 5));
}

TEST_CASE("endmarker configuration graph") {
	auto a = build_unary_gap_2nfa(2);
	auto g = build_endmarker_config_graph(a, 3);
	CHECK(g.accepts());
	CHECK(g.source == g.index(side::left, a.initial()));
	for (std::size_t v = 0; v < g.adj.size(); ++v)
		for (const auto& e : g.adj[v]) {
			auto [sv, qv] = g.vertex(v);
			auto [se, qe] = g.vertex(e.to);
			if (e.kind == endmarker_config_graph::edge_kind::traversal)
				CHECK(sv != se);
			else
				CHECK(sv == se);
		}
	CHECK_FALSE(build_endmarker_config_graph(a, 4).accepts());

	two_way_machine quiet(alphabet({"a"}), std::vector<std::string>{"p"});
	quiet.set_start_cell(start_cell::cell0);
	CHECK(build_endmarker_config_graph(quiet, 10).num_edges() == 0);
	CHECK_FALSE(accepts_unary(quiet, 10));
	quiet.add_accepting(0);
	CHECK(accepts_unary(quiet, 10));
	CHECK(build_endmarker_config_graph(build_unary_gap_2nfa(4), 892551).accepts());
}

TEST_CASE("GAP through the unary pipeline") {
	CHECK(solve_gap_via_unary(sample_graph()));
	CHECK_FALSE(solve_gap_via_unary(digraph{3, {}}));
	CHECK(solve_gap_via_unary(digraph{1, {}}));
	for (unsigned mask = 0; mask < 16; ++mask) {
		auto g = graph_from_mask(2, mask);
		REQUIRE(solve_gap_via_unary(g) == closure_gap(g));
	}
	for (unsigned mask = 0; mask < 512; mask += 5) {
		auto g = graph_from_mask(3, mask);
		REQUIRE(solve_gap_via_unary(g) == closure_gap(g));
	}
}

TEST_CASE("divide-and-conquer reachability") {
	auto a = build_unary_gap_2nfa(2);
	dnc_recognizer r(a);
	const auto& m = r.machine();
	for (state_id p = 0; p < m.num_states(); ++p)
		CHECK(r.reachable(p, p, 1, 5));
	auto reaches_accept = [&](std::uint64_t len) {
		for (state_id f : m.accepting())
			if (r.reachable(m.initial(), f, m.num_states(), len))
				return true;
		return false;
	};
	CHECK(reaches_accept(3));
	CHECK_FALSE(reaches_accept(4));
	CHECK(decide_membership_dnc(a, 9));
	CHECK(reachable_divide_conquer(a, a.initial(), a.initial(), 1, 7));
	CHECK_FALSE(reachable_divide_conquer(a, a.initial(), *a.find_state("acc"), 0, 3));

	auto a3 = build_unary_gap_2nfa(3);
	CHECK(decide_membership_dnc(a3, encode_graph(digraph{3, {{0, 1}, {1, 2}}})));
	CHECK_FALSE(decide_membership_dnc(a3, encode_graph(digraph{3, {{0, 1}, {2, 1}}})));
}

TEST_CASE("divide-and-conquer agrees with the configuration graph on A_n") {
	for (std::size_t n = 2; n <= 3; ++n) {
		auto a = build_unary_gap_2nfa(n);
		dnc_recognizer r(a);
		unary_sweeper sw(a);
		for (std::uint64_t m = 0; m <= 500; ++m)
			REQUIRE(r.accepts(m) == build_endmarker_config_graph(a, m, sw).accepts());
		CHECK(r.memo_size() > 0);
	}
}

TEST_CASE("random quasi-sweeping machines") {
	std::mt19937 rng(99);
	for (int k = 0; k < 40; ++k) {
		auto m = oracle::random_quasi_sweeping(rng);
		INFO(serialize(m));
		CHECK(is_outer_nondeterministic(m).holds);
		dnc_recognizer r(m);
		unary_sweeper sw(m);
		for (std::uint64_t len = 0; len <= 200; ++len) {
			bool cfg = build_endmarker_config_graph(m, len, sw).accepts();
			REQUIRE(cfg == accepts_nondeterministic(m, word(len, 0)));
			REQUIRE(r.accepts(len) == cfg);
		}
		for (state_id q = 0; q < m.num_states(); ++q)
			for (side s : {side::left, side::right})
				for (std::size_t len = 0; len <= 60; ++len)
					if (heads_inward(m, q, s))
						REQUIRE(sw.landing(q, s, len) == literal_landing(m, q, s, len));
	}
}

TEST_CASE("patched recognizer overrides short lengths only") {
	auto a = build_unary_gap_2nfa(2);
	patched_recognizer p([&](const unary_length& m) { return accepts_unary(a, m); }, 5 * 2 * 2);
	p.set_exception(3, false);
	p.set_exception(4, true);
	CHECK_FALSE(p(3));
	CHECK(p(4));
	CHECK(p(6));
	CHECK_FALSE(p(7));
	CHECK(p.exceptions() == 2);
	CHECK_THROWS_AS(p.set_exception(21, true), std::invalid_argument);
	CHECK(p(unary_length(892551)));
}
