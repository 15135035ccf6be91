#include <catch_amalgamated.hpp>

#include <twfa/analysis.hpp>
#include <twfa/families.hpp>
#include <twfa/unary_gap.hpp>

#include "oracles.hpp"

using namespace twfa;

namespace {

any_machine make(family f, unsigned n, variant v) { return generate({f, n, v}).machine; }

two_way_machine make2(family f, unsigned n, variant v) { return std::get<two_way_machine>(make(f, n, v)); }

one_way_machine make1(family f, unsigned n, variant v) { return std::get<one_way_machine>(make(f, n, v)); }

// Reversal positions of a trajectory, computed directly from the step list.
std::vector<std::size_t> reversal_positions(const trajectory& t) {
	std::vector<std::size_t> out;
	int last = 0;
	for (std::size_t i = 0; i < t.moves.size(); ++i) {
		int d = t.moves[i] == move::right ? 1 : t.moves[i] == move::left ? -1 : 0;
		if (d == 0)
			continue;
		if (last != 0 && d != last)
			out.push_back(t.steps[i].position);
		last = d;
	}
	return out;
}

} // namespace

TEST_CASE("count_reversals ignores stay moves") {
	std::vector<move> ms{move::right, move::right, move::stay, move::right, move::stay, move::left};
	CHECK(count_reversals(ms) == 1);
	std::vector<move> zig{move::right, move::left, move::stay, move::right, move::left};
	CHECK(count_reversals(zig) == 3);
	CHECK(count_reversals(std::vector<move>{}) == 0);
	CHECK(count_reversals(std::vector<move>{move::stay, move::left}) == 0);
}

TEST_CASE("one-reversal I_n machine reverses exactly once") {
	auto m = make2(family::I, 5, variant::two_way_one_reversal);
	CHECK(count_reversals(run_deterministic(m, oracle::ab_word("ababab"))) == 1);
	for (unsigned n = 1; n <= 4; ++n) {
		auto r = max_reversals(make2(family::I, n, variant::two_way_one_reversal), 2 * n + 4);
		CHECK(r.max_reversals == 1);
		CHECK(r.bound_checked == 2 * n + 4);
	}
}

TEST_CASE("sweeping L_2 reverses at most three times") {
	for (variant v : {variant::sweeping_quadratic, variant::sweeping_linear}) {
		auto m = make2(family::L, 2, v);
		CHECK(max_reversals(m, 12).max_reversals <= 3);
	}
}

TEST_CASE("naive L_n reversals grow with the input") {
	auto m = make2(family::L, 3, variant::two_way_naive);
	std::size_t prev = 0;
	for (std::size_t k = 1; k <= 5; ++k) {
		std::string s = std::string(k, 'a') + std::string(k, 'b') + std::string(k, 'a') + std::string(k, 'b');
		auto r = count_reversals(run_deterministic(m, oracle::ab_word(s)));
		CHECK(r > prev);
		prev = r;
	}
}

TEST_CASE("max_reversals refuses nondeterministic machines") {
	CHECK_THROWS_AS(max_reversals(make2(family::L, 2, variant::outer_nondet), 4), nondeterministic_machine);
}

TEST_CASE("naive machine is oblivious, improved machine is not") {
	for (unsigned n = 1; n <= 3; ++n) {
		auto v = is_oblivious(make2(family::L, n, variant::two_way_naive), 8);
		CHECK(v.holds);
		CHECK(v.method == classifier_method::behavioral);
		CHECK(v.bound == 8);
	}
	auto m = make2(family::L, 2, variant::two_way_improved);
	auto v = is_oblivious(m, 8);
	REQUIRE_FALSE(v.holds);
	REQUIRE(v.witness);
	CHECK_FALSE(v.reason.empty());
	auto other = run_deterministic(m, word(v.witness->input.size(), sym_b));
	auto mine = run_deterministic(m, v.witness->input);
	CHECK(other.steps.size() != mine.steps.size());
}

TEST_CASE("obliviousness is monotone in the bound") {
	auto m = make2(family::L, 2, variant::two_way_improved);
	std::size_t first_fail = 0;
	while (is_oblivious(m, first_fail).holds)
		++first_fail;
	for (std::size_t l = 0; l < first_fail; ++l)
		CHECK(is_oblivious(m, l).holds);
	for (std::size_t l = first_fail; l <= first_fail + 2; ++l)
		CHECK_FALSE(is_oblivious(m, l).holds);
}

TEST_CASE("one-way machines embedded as two-way are oblivious") {
	auto d = embed(make1(family::L, 2, variant::one_way_dfa_minimal));
	CHECK(is_oblivious(d, 8).holds);
}

TEST_CASE("word budget guards exponential classifiers") {
	auto m = make2(family::L, 2, variant::two_way_naive);
	CHECK_THROWS_AS(is_oblivious(m, 21), exponential_budget_exceeded);
	CHECK_NOTHROW(is_oblivious(m, 4, 1e9));
}

TEST_CASE("sweeping classifier") {
	CHECK(is_sweeping(make2(family::L, 3, variant::sweeping_quadratic), 9).holds);
	CHECK(is_sweeping(make2(family::L, 3, variant::sweeping_linear), 9).holds);
	CHECK(is_sweeping(embed(make1(family::I, 2, variant::one_way_dfa_minimal)), 9).holds);

	auto naive = make2(family::L, 3, variant::two_way_naive);
	auto v = is_sweeping(naive, 9);
	REQUIRE_FALSE(v.holds);
	REQUIRE(v.witness);
	// the reported word really has a mid-tape reversal
	auto t = run_deterministic(naive, v.witness->input);
	bool inner = false;
	for (auto p : reversal_positions(t))
		inner = inner || (p != 0 && p != v.witness->input.size() + 1);
	CHECK(inner);
}

TEST_CASE("sweeping verdict implies endmarker-only reversals on sampled runs") {
	std::mt19937 rng(3);
	for (variant var : {variant::sweeping_quadratic, variant::sweeping_linear, variant::two_way_naive}) {
		for (unsigned n = 1; n <= 3; ++n) {
			auto m = make2(family::L, n, var);
			bool holds = is_sweeping(m, 2 * n + 4).holds;
			bool all_outer = true;
			for (int k = 0; k < 200; ++k) {
				word w(rng() % (2 * n + 5));
				for (auto& x : w)
					x = rng() % 2;
				for (auto p : reversal_positions(run_deterministic(m, w)))
					all_outer = all_outer && (p == 0 || p == w.size() + 1);
			}
			if (holds)
				CHECK(all_outer);
		}
	}
}

TEST_CASE("rotating classifier") {
	CHECK(is_rotating(make2(family::L, 2, variant::rotating)).holds);
	CHECK(is_rotating(make2(family::I, 3, variant::rotating)).holds);
	CHECK(is_rotating(make1(family::L, 2, variant::one_way_nfa)).holds);
	auto v = is_rotating(make2(family::L, 2, variant::two_way_naive));
	CHECK_FALSE(v.holds);
	CHECK_FALSE(v.reason.empty());
	CHECK_FALSE(v.witness);
	CHECK(v.method == classifier_method::structural);
}

TEST_CASE("outer-nondeterminism classifier") {
	CHECK(is_outer_nondeterministic(make2(family::L, 3, variant::outer_nondet)).holds);
	CHECK(is_outer_nondeterministic(make2(family::L, 3, variant::sweeping_linear)).holds);
	auto l2_nfa = embed(make1(family::L, 2, variant::one_way_nfa));
	auto v = is_outer_nondeterministic(l2_nfa);
	CHECK_FALSE(v.holds);
	CHECK_THAT(v.reason, Catch::Matchers::ContainsSubstring("a"));
	CHECK_FALSE(is_outer_nondeterministic(make1(family::I, 2, variant::one_way_nfa)).holds);
	CHECK(is_outer_nondeterministic(make1(family::I, 2, variant::one_way_dfa_minimal)).holds);
}

TEST_CASE("outer-nondeterministic L_n is quasi-sweeping") {
	for (unsigned n = 1; n <= 4; ++n) {
		auto m = make2(family::L, n, variant::outer_nondet);
		CHECK(is_outer_nondeterministic(m).holds);
		CHECK(is_sweeping(m, 2 * n + 4).holds);
	}
}

TEST_CASE("A_n is outer nondeterministic and sweeping") {
	for (std::size_t n = 2; n <= 3; ++n) {
		auto a = build_unary_gap_2nfa(n);
		CHECK(is_outer_nondeterministic(a).holds);
		CHECK(is_sweeping(a, 50).holds);
	}
}

TEST_CASE("outer-nondeterministic runs are deterministic between endmarker visits") {
	auto m = make2(family::L, 3, variant::outer_nondet);
	std::mt19937 rng(5);
	for (int k = 0; k < 50; ++k) {
		word w(rng() % 10);
		for (auto& x : w)
			x = rng() % 2;
		for (state_id q = 0; q < m.num_states(); ++q)
			for (std::size_t pos = 1; pos <= w.size(); ++pos)
				CHECK(m.transitions(q, tape_at(w, pos)).size() <= 1);
	}
}

TEST_CASE("accepting run counts") {
	auto l1 = make1(family::L, 1, variant::one_way_nfa);
	CHECK(count_accepting_runs(l1, oracle::ab_word("aaa")) == run_count::finite(2));
	CHECK(count_accepting_runs(l1, oracle::ab_word("bbb")) == run_count::finite(0));
	for (unsigned n = 1; n <= 3; ++n) {
		auto i = make1(family::I, n, variant::one_way_nfa);
		for (const auto& s : oracle::strings_upto("ab", 8))
			if (oracle::in_I(n, s))
				CHECK(count_accepting_runs(i, oracle::ab_word(s)) == run_count::finite(1));
	}
}

TEST_CASE("run counts agree with explicit path enumeration") {
	for (unsigned n = 1; n <= 3; ++n) {
		auto l = make1(family::L, n, variant::one_way_nfa);
		for (const auto& s : oracle::strings_upto("ab", 7)) {
			auto w = oracle::ab_word(s);
			CHECK(count_accepting_runs(l, w) == run_count::finite(oracle::nfa_path_count(l, w)));
		}
	}
}

TEST_CASE("run counts on deterministic machines are zero or one") {
	for (variant v : {variant::two_way_naive, variant::sweeping_linear, variant::two_way_improved}) {
		auto m = make2(family::L, 2, v);
		for (const auto& s : oracle::strings_upto("ab", 7)) {
			auto c = count_accepting_runs(m, oracle::ab_word(s));
			CHECK(c == run_count::finite(oracle::in_L(2, s) ? 1 : 0));
		}
	}
}

TEST_CASE("cycles on accepting paths and the cap") {
	two_way_machine m(alphabet({"a"}), std::vector<std::string>{"p", "q", "f"});
	m.add_transition(0, tape_symbol::of(0), 1, move::stay);
	m.add_transition(1, tape_symbol::of(0), 0, move::stay);
	m.add_transition(0, tape_symbol::of(0), 2, move::right);
	m.add_accepting(2);
	CHECK(count_accepting_runs(m, word{0}) == run_count::infinite());

	// 2^len paths: at every cell choose between two states that both move right
	two_way_machine fan(alphabet({"a"}), std::vector<std::string>{"x", "y", "f"});
	for (state_id q : {0u, 1u}) {
		fan.add_transition(q, tape_symbol::of(0), 0, move::right);
		fan.add_transition(q, tape_symbol::of(0), 1, move::right);
		fan.add_transition(q, tape_symbol::right_end(), 2, move::stay);
	}
	fan.add_accepting(2);
	CHECK(count_accepting_runs(fan, word(10, 0)) == run_count::finite(1024));
	CHECK(count_accepting_runs(fan, word(10, 0), 100) == run_count::at_least(100));
}
