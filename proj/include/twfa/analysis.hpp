// analysis.hpp -- classifiers for restricted two-way models
//
// Reversal counting, obliviousness and sweeping are behavioral: they are
// decided by exhaustive enumeration of inputs up to a length bound, and the
// verdict records that bound. Rotating and outer-nondeterministic checks are
// structural.
#ifndef TWFA_ANALYSIS_HPP
#define TWFA_ANALYSIS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace twfa {

struct exponential_budget_exceeded : error {
	using error::error;
};

// Head reversals of a move sequence. Stay and wrap moves are transparent.
inline std::size_t count_reversals(std::span<const move> moves) {
	std::size_t n = 0;
	std::optional<move> last;
	for (move d : moves) {
		if (d != move::left && d != move::right)
			continue;
		if (last && *last != d)
			++n;
		last = d;
	}
	return n;
}

inline std::size_t count_reversals(const trajectory& t) { return count_reversals(t.moves); }

struct reversal_report {
	std::size_t max_reversals = 0;
	word witness;
	std::size_t bound_checked = 0;
};

inline reversal_report max_reversals(const two_way_machine& m, std::size_t max_len) {
	if (!m.is_deterministic())
		throw nondeterministic_machine();
	reversal_report r;
	r.bound_checked = max_len;
	bool first = true;
	for_each_word(m.sigma().size(), max_len, [&](const word& w) {
		auto n = count_reversals(run_deterministic(m, w));
		if (first || n > r.max_reversals) {
			r.max_reversals = n;
			r.witness = w;
			first = false;
		}
		return true;
	});
	return r;
}

enum class classifier_method : std::uint8_t { structural, behavioral };

struct counterexample {
	word input;
	std::string evidence;
};

struct classifier_verdict {
	bool holds = true;
	std::optional<counterexample> witness; // behavioral failures only
	std::string reason; // why the property fails
	classifier_method method = classifier_method::structural;
	std::size_t bound = 0; // max input length examined, behavioral only
};

namespace detail {
inline classifier_verdict behavioral(std::size_t bound) {
	classifier_verdict v;
	v.method = classifier_method::behavioral;
	v.bound = bound;
	return v;
}

inline void check_word_budget(std::size_t alphabet_size, std::size_t max_len, double cap) {
	if (std::pow(static_cast<double>(alphabet_size), static_cast<double>(max_len)) > cap)
		throw exponential_budget_exceeded("|alphabet|^" + std::to_string(max_len) + " exceeds the word budget");
}
} // namespace detail

inline constexpr double default_word_budget = 1048576.0; // 2^20

// Oblivious: for each length, every input yields the same head-position sequence.
inline classifier_verdict is_oblivious(const two_way_machine& m, std::size_t max_len,
	double word_budget = default_word_budget) {
	if (!m.is_deterministic())
		throw nondeterministic_machine();
	detail::check_word_budget(m.sigma().size(), max_len, word_budget);
	auto v = detail::behavioral(max_len);
	for (std::size_t len = 0; len <= max_len && v.holds; ++len) {
		std::optional<std::pair<word, std::vector<std::size_t>>> ref;
		for_each_word_of_length(m.sigma().size(), len, [&](const word& w) {
			auto t = run_deterministic(m, w);
			std::vector<std::size_t> pos;
			pos.reserve(t.steps.size());
			for (const auto& c : t.steps)
				pos.push_back(c.position);
			if (!ref) {
				ref.emplace(w, std::move(pos));
				return true;
			}
			if (pos != ref->second) {
				std::size_t i = 0;
				while (i < pos.size() && i < ref->second.size() && pos[i] == ref->second[i])
					++i;
				v.holds = false;
				v.reason = "head trajectory on '" + m.sigma().format_word(w) + "' differs from that on '" +
					m.sigma().format_word(ref->first) + "' at time " + std::to_string(i);
				v.witness = counterexample{w, v.reason};
				return false;
			}
			return true;
		});
	}
	return v;
}

// Sweeping: every head reversal happens on an endmarker. Works for
// nondeterministic machines by exploring (state, position, last direction)
// over all computations.
inline classifier_verdict is_sweeping(const two_way_machine& m, std::size_t max_len) {
	auto v = detail::behavioral(max_len);
	const std::size_t k = m.sigma().size();
	for_each_word(k, max_len, [&](const word& w) {
		const std::size_t len = w.size();
		const std::size_t cells = len + 2;
		// direction: 0 none, 1 left, 2 right
		std::vector<char> seen(m.num_states() * cells * 3, 0);
		struct node {
			state_id q;
			std::size_t pos;
			int dir;
		};
		std::vector<node> stack;
		auto push = [&](state_id q, std::size_t pos, int dir) {
			auto& s = seen[(q * cells + pos) * 3 + dir];
			if (!s) {
				s = 1;
				stack.push_back({q, pos, dir});
			}
		};
		push(m.initial(), start_position(m), 0);
		while (!stack.empty()) {
			auto c = stack.back();
			stack.pop_back();
			if (accepts_at(m, c.q, c.pos, len))
				continue;
			for (const auto& st : m.transitions(c.q, tape_at(w, c.pos))) {
				int dir = c.dir;
				if (st.dir == move::left || st.dir == move::right) {
					dir = st.dir == move::left ? 1 : 2;
					if (c.dir != 0 && dir != c.dir && c.pos != 0 && c.pos != len + 1) {
						v.holds = false;
						v.reason = "reversal at position " + std::to_string(c.pos) + " on word '" +
							m.sigma().format_word(w) + "'";
						v.witness = counterexample{w, v.reason};
						return false;
					}
				}
				push(st.target, apply_move(c.pos, st.dir, len), dir);
			}
		}
		return true;
	});
	return v;
}

// Rotating: no left moves at all, wraps only on the right endmarker.
inline classifier_verdict is_rotating(const two_way_machine& m) {
	classifier_verdict v;
	for (state_id q = 0; q < m.num_states() && v.holds; ++q)
		for (std::size_t col = 0; col < m.columns() && v.holds; ++col) {
			auto on = tape_symbol::from_column(col, m.sigma().size());
			for (const auto& st : m.transitions(q, on)) {
				if (st.dir == move::left) {
					v.holds = false;
					v.reason = "left move at " + describe(m, q, on);
					break;
				}
				if (st.dir == move::wrap && on != tape_symbol::right_end()) {
					v.holds = false;
					v.reason = "wrap away from -| at " + describe(m, q, on);
					break;
				}
			}
		}
	return v;
}

inline classifier_verdict is_rotating(const one_way_machine&) { return {}; }

// Outer nondeterminism: deterministic on every real symbol.
inline classifier_verdict is_outer_nondeterministic(const two_way_machine& m) {
	classifier_verdict v;
	for (state_id q = 0; q < m.num_states() && v.holds; ++q)
		for (symbol_id a = 0; a < m.sigma().size(); ++a)
			if (m.transitions(q, tape_symbol::of(a)).size() > 1) {
				v.holds = false;
				v.reason = "nondeterministic choice at " + describe(m, q, tape_symbol::of(a));
				break;
			}
	return v;
}

inline classifier_verdict is_outer_nondeterministic(const one_way_machine& m) {
	return is_outer_nondeterministic(embed(m));
}

// Accepting-computation counting ------------------------------------------

struct run_count {
	enum class kind : std::uint8_t { finite, at_least, infinite };
	kind type = kind::finite;
	std::uint64_t value = 0;

	static run_count finite(std::uint64_t n) { return {kind::finite, n}; }
	static run_count at_least(std::uint64_t n) { return {kind::at_least, n}; }
	static run_count infinite() { return {kind::infinite, 0}; }
	bool operator==(const run_count&) const = default;
};

// Counts distinct start-to-acceptance paths in the configuration graph.
// Accepting configurations are terminal since a run halts there.
inline run_count count_accepting_runs(const two_way_machine& m, std::span<const symbol_id> w,
	std::uint64_t cap = 1'000'000) {
	const std::size_t len = w.size();
	const std::size_t cells = len + 2;
	const std::size_t n = m.num_states() * cells;
	auto id = [&](state_id q, std::size_t pos) { return q * cells + pos; };
	std::vector<std::vector<std::size_t>> succ(n), pred(n);
	std::vector<char> accepting(n, 0), reach(n, 0), coreach(n, 0);
	for (state_id q = 0; q < m.num_states(); ++q)
		for (std::size_t pos = 0; pos < cells; ++pos) {
			const auto u = id(q, pos);
			if (accepts_at(m, q, pos, len)) {
				accepting[u] = 1;
				continue;
			}
			for (const auto& st : m.transitions(q, tape_at(w, pos))) {
				// one edge per transition: distinct transitions are distinct computations
				auto v = id(st.target, apply_move(pos, st.dir, len));
				succ[u].push_back(v);
				pred[v].push_back(u);
			}
		}
	const auto start = id(m.initial(), start_position(m));
	std::vector<std::size_t> stack{start};
	reach[start] = 1;
	while (!stack.empty()) {
		auto u = stack.back();
		stack.pop_back();
		for (auto v : succ[u])
			if (!reach[v]) {
				reach[v] = 1;
				stack.push_back(v);
			}
	}
	for (std::size_t u = 0; u < n; ++u)
		if (accepting[u] && reach[u]) {
			coreach[u] = 1;
			stack.push_back(u);
		}
	while (!stack.empty()) {
		auto u = stack.back();
		stack.pop_back();
		for (auto v : pred[u])
			if (!coreach[v] && reach[v]) {
				coreach[v] = 1;
				stack.push_back(v);
			}
	}
	if (!coreach[start])
		return run_count::finite(0);
	// topological order of the useful subgraph (Kahn); leftover nodes mean a cycle
	std::vector<std::size_t> indeg(n, 0);
	for (std::size_t u = 0; u < n; ++u)
		if (coreach[u])
			for (auto v : succ[u])
				if (coreach[v])
					++indeg[v];
	std::vector<std::size_t> order;
	for (std::size_t u = 0; u < n; ++u)
		if (coreach[u] && indeg[u] == 0)
			order.push_back(u);
	for (std::size_t i = 0; i < order.size(); ++i)
		for (auto v : succ[order[i]])
			if (coreach[v] && --indeg[v] == 0)
				order.push_back(v);
	std::size_t useful = std::count(coreach.begin(), coreach.end(), 1);
	if (order.size() != useful)
		return run_count::infinite();
	std::vector<std::uint64_t> paths(n, 0);
	paths[start] = 1;
	bool saturated = false;
	std::uint64_t total = 0;
	for (auto u : order) {
		if (accepting[u]) {
			total += paths[u];
			if (total >= cap) {
				total = cap;
				saturated = true;
			}
			continue;
		}
		for (auto v : succ[u])
			if (coreach[v]) {
				paths[v] += paths[u];
				if (paths[v] >= cap) {
					paths[v] = cap;
					saturated = true;
				}
			}
	}
	if (saturated && total >= cap)
		return run_count::at_least(cap);
	return run_count::finite(total);
}

inline run_count count_accepting_runs(const one_way_machine& m, std::span<const symbol_id> w,
	std::uint64_t cap = 1'000'000) {
	return count_accepting_runs(embed(m), w, cap);
}

} // namespace twfa

#endif
