// transform.hpp -- conversions between machine classes and equivalence oracles
#ifndef TWFA_TRANSFORM_HPP
#define TWFA_TRANSFORM_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "analysis.hpp"
#include "core.hpp"

namespace twfa {

struct state_budget_exceeded : error {
	using error::error;
};

inline constexpr std::size_t default_state_budget = 1u << 20;

namespace detail {

struct vector_hash {
	template <typename T>
	std::size_t operator()(const std::vector<T>& v) const noexcept {
		std::size_t h = v.size();
		for (const auto& x : v)
			h ^= std::hash<T>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
		return h;
	}
};

// Maps each symbol of `from` to the symbol with the same name in `to`.
inline std::vector<symbol_id> symbol_translation(const alphabet& from, const alphabet& to) {
	if (from.size() != to.size())
		throw std::invalid_argument("alphabets differ");
	std::vector<symbol_id> map(from.size());
	for (symbol_id a = 0; a < from.size(); ++a) {
		auto b = to.find(from.name(a));
		if (!b)
			throw std::invalid_argument("alphabets differ: '" + from.name(a) + "'");
		map[a] = *b;
	}
	return map;
}

} // namespace detail

// Same machine over `target`, an alphabet with the same symbol names.
inline one_way_machine remap_alphabet(const one_way_machine& m, const alphabet& target) {
	auto tr = detail::symbol_translation(m.sigma(), target);
	one_way_machine out(target, m.state_names());
	out.set_initial(m.initial());
	for (state_id q : m.accepting())
		out.add_accepting(q);
	for (state_id q = 0; q < m.num_states(); ++q)
		for (symbol_id a = 0; a < m.sigma().size(); ++a)
			for (state_id t : m.successors(q, a))
				out.add_transition(q, tr[a], t);
	return out;
}

// States renumbered in BFS order from the initial state (targets visited in
// column order); unreachable states keep their relative order at the end.
inline std::vector<state_id> bfs_order(const two_way_machine& m) {
	std::vector<state_id> order{m.initial()};
	std::vector<char> seen(m.num_states(), 0);
	seen[m.initial()] = 1;
	for (std::size_t i = 0; i < order.size(); ++i)
		for (std::size_t col = 0; col < m.columns(); ++col)
			for (const auto& st : m.transitions(order[i], tape_symbol::from_column(col, m.sigma().size())))
				if (!seen[st.target]) {
					seen[st.target] = 1;
					order.push_back(st.target);
				}
	for (state_id q = 0; q < m.num_states(); ++q)
		if (!seen[q])
			order.push_back(q);
	return order;
}

inline two_way_machine canonical_order(const two_way_machine& m) {
	auto order = bfs_order(m);
	std::vector<state_id> pos(m.num_states());
	std::vector<std::string> names;
	for (state_id i = 0; i < order.size(); ++i) {
		pos[order[i]] = i;
		names.push_back(m.state_name(order[i]));
	}
	two_way_machine out(m.sigma(), names);
	out.set_initial(pos[m.initial()]);
	for (state_id q : m.accepting())
		out.add_accepting(pos[q]);
	out.set_accept_mode(m.mode());
	out.set_start_cell(m.start());
	for (state_id q = 0; q < m.num_states(); ++q)
		for (std::size_t col = 0; col < m.columns(); ++col) {
			auto on = tape_symbol::from_column(col, m.sigma().size());
			for (const auto& st : m.transitions(q, on))
				out.add_transition(pos[q], on, pos[st.target], st.dir);
		}
	return out;
}

inline one_way_machine canonical_order(const one_way_machine& m) {
	auto t = canonical_order(embed(m));
	one_way_machine out(m.sigma(), t.state_names());
	out.set_initial(t.initial());
	for (state_id q : t.accepting())
		out.add_accepting(q);
	for (state_id q = 0; q < t.num_states(); ++q)
		for (symbol_id a = 0; a < m.sigma().size(); ++a)
			for (const auto& st : t.transitions(q, tape_symbol::of(a)))
				out.add_transition(q, a, st.target);
	return out;
}

inline any_machine canonical_order(const any_machine& m) {
	return std::visit([](const auto& x) -> any_machine { return canonical_order(x); }, m);
}

// Subset construction -----------------------------------------------------

// Reachable subsets only, numbered in BFS order from {initial}. The output is
// complete; the empty subset appears as a sink when it is reachable.
inline one_way_machine determinize(const one_way_machine& nfa, std::size_t budget = default_state_budget) {
	const std::size_t k = nfa.sigma().size();
	using subset = std::vector<state_id>;
	std::unordered_map<subset, state_id, detail::vector_hash> index;
	std::vector<subset> subsets;
	auto intern = [&](subset s) {
		auto [it, inserted] = index.emplace(s, static_cast<state_id>(subsets.size()));
		if (inserted) {
			if (subsets.size() >= budget)
				throw state_budget_exceeded("subset construction exceeds " + std::to_string(budget) + " states");
			subsets.push_back(std::move(s));
		}
		return it->second;
	};
	intern({nfa.initial()});
	std::vector<std::vector<state_id>> delta;
	std::vector<char> mark(nfa.num_states(), 0);
	for (std::size_t i = 0; i < subsets.size(); ++i) {
		delta.emplace_back(k);
		for (symbol_id a = 0; a < k; ++a) {
			subset next;
			for (state_id q : subsets[i])
				for (state_id t : nfa.successors(q, a))
					if (!mark[t]) {
						mark[t] = 1;
						next.push_back(t);
					}
			for (state_id t : next)
				mark[t] = 0;
			std::sort(next.begin(), next.end());
			delta[i][a] = intern(std::move(next));
		}
	}
	std::vector<std::string> names;
	for (const auto& s : subsets) {
		std::string n = "{";
		for (std::size_t j = 0; j < s.size(); ++j) {
			if (j)
				n += ',';
			n += nfa.state_name(s[j]);
		}
		names.push_back(n + "}");
	}
	one_way_machine out(nfa.sigma(), names);
	out.set_initial(0);
	for (state_id i = 0; i < subsets.size(); ++i) {
		if (std::any_of(subsets[i].begin(), subsets[i].end(), [&](state_id q) { return nfa.is_accepting(q); }))
			out.add_accepting(i);
		for (symbol_id a = 0; a < k; ++a)
			out.add_transition(i, a, delta[i][a]);
	}
	return out;
}

// Adds a non-accepting sink for every missing transition.
inline one_way_machine complete(const one_way_machine& dfa) {
	if (!dfa.is_deterministic())
		throw nondeterministic_machine();
	if (dfa.is_complete())
		return dfa;
	one_way_machine out = dfa;
	std::string sink = "sink";
	for (int i = 1; dfa.find_state(sink); ++i)
		sink = "sink_" + std::to_string(i);
	const state_id s = out.add_state(sink);
	for (state_id q = 0; q <= s; ++q)
		for (symbol_id a = 0; a < out.sigma().size(); ++a)
			if (out.successors(q, a).empty())
				out.add_transition(q, a, s);
	return out;
}

// Moore partition refinement on the reachable part. States of the result are
// numbered in BFS order from the initial state and carry the name of the
// first original state (in BFS order) of their class.
inline one_way_machine minimize(const one_way_machine& input) {
	const one_way_machine dfa = complete(input);
	const std::size_t k = dfa.sigma().size();
	std::vector<state_id> order;
	std::vector<int> seen(dfa.num_states(), 0);
	order.push_back(dfa.initial());
	seen[dfa.initial()] = 1;
	for (std::size_t i = 0; i < order.size(); ++i)
		for (symbol_id a = 0; a < k; ++a) {
			state_id t = dfa.successors(order[i], a)[0];
			if (!seen[t]) {
				seen[t] = 1;
				order.push_back(t);
			}
		}
	std::vector<std::size_t> cls(dfa.num_states(), 0);
	for (state_id q : order)
		cls[q] = dfa.is_accepting(q) ? 1 : 0;
	std::size_t num_classes = 0;
	for (;;) {
		std::map<std::vector<std::size_t>, std::size_t> sig_index;
		std::vector<std::size_t> next(dfa.num_states(), 0);
		for (state_id q : order) {
			std::vector<std::size_t> sig{cls[q]};
			for (symbol_id a = 0; a < k; ++a)
				sig.push_back(cls[dfa.successors(q, a)[0]]);
			auto [it, _] = sig_index.emplace(std::move(sig), sig_index.size());
			next[q] = it->second;
		}
		cls.swap(next);
		if (sig_index.size() == num_classes)
			break;
		num_classes = sig_index.size();
	}
	// renumber classes by BFS from the initial class
	std::vector<state_id> class_rep(num_classes, 0);
	std::vector<char> has_rep(num_classes, 0);
	for (state_id q : order)
		if (!has_rep[cls[q]]) {
			has_rep[cls[q]] = 1;
			class_rep[cls[q]] = q;
		}
	std::vector<std::ptrdiff_t> new_id(num_classes, -1);
	new_id[cls[dfa.initial()]] = 0;
	std::vector<std::size_t> bfs_classes{cls[dfa.initial()]};
	for (std::size_t i = 0; i < bfs_classes.size(); ++i) {
		state_id q = class_rep[bfs_classes[i]];
		for (symbol_id a = 0; a < k; ++a) {
			auto c = cls[dfa.successors(q, a)[0]];
			if (new_id[c] < 0) {
				new_id[c] = static_cast<std::ptrdiff_t>(bfs_classes.size());
				bfs_classes.push_back(c);
			}
		}
	}
	std::vector<std::string> names;
	for (auto c : bfs_classes)
		names.push_back(dfa.state_name(class_rep[c]));
	one_way_machine out(dfa.sigma(), names);
	out.set_initial(0);
	for (std::size_t i = 0; i < bfs_classes.size(); ++i) {
		state_id q = class_rep[bfs_classes[i]];
		if (dfa.is_accepting(q))
			out.add_accepting(static_cast<state_id>(i));
		for (symbol_id a = 0; a < k; ++a)
			out.add_transition(static_cast<state_id>(i), a,
				static_cast<state_id>(new_id[cls[dfa.successors(q, a)[0]]]));
	}
	return out;
}

// Isomorphism of complete DFAs over the same alphabet (by symbol name),
// restricted to their reachable parts.
inline bool isomorphic(const one_way_machine& x, const one_way_machine& y) {
	if (!x.is_complete() || !y.is_complete())
		throw std::invalid_argument("isomorphic() expects complete DFAs");
	auto tr = detail::symbol_translation(x.sigma(), y.sigma());
	std::vector<std::ptrdiff_t> fwd(x.num_states(), -1), bwd(y.num_states(), -1);
	std::vector<state_id> queue{x.initial()};
	fwd[x.initial()] = y.initial();
	bwd[y.initial()] = x.initial();
	for (std::size_t i = 0; i < queue.size(); ++i) {
		state_id p = queue[i];
		state_id q = static_cast<state_id>(fwd[p]);
		if (x.is_accepting(p) != y.is_accepting(q))
			return false;
		for (symbol_id a = 0; a < x.sigma().size(); ++a) {
			state_id p2 = x.successors(p, a)[0], q2 = y.successors(q, tr[a])[0];
			if (fwd[p2] < 0 && bwd[q2] < 0) {
				fwd[p2] = q2;
				bwd[q2] = p2;
				queue.push_back(p2);
			} else if (fwd[p2] != static_cast<std::ptrdiff_t>(q2) || bwd[q2] != static_cast<std::ptrdiff_t>(p2)) {
				return false;
			}
		}
	}
	return true;
}

// Shortest z such that exactly one of xz, yz is accepted; ties go to the
// earliest word in symbol order. Empty optional when x and y reach the same state.
inline std::optional<word> distinguishing_extension(const one_way_machine& input, std::span<const symbol_id> x,
	std::span<const symbol_id> y) {
	const one_way_machine dfa = complete(input);
	auto run = [&](std::span<const symbol_id> w) {
		state_id q = dfa.initial();
		for (symbol_id a : w)
			q = dfa.successors(q, a)[0];
		return q;
	};
	const state_id p0 = run(x), q0 = run(y);
	if (p0 == q0)
		return std::nullopt;
	const std::size_t n = dfa.num_states();
	const std::size_t k = dfa.sigma().size();
	std::vector<std::ptrdiff_t> parent(n * n, -2);
	std::vector<symbol_id> via(n * n, 0);
	std::queue<std::size_t> bfs;
	parent[p0 * n + q0] = -1;
	bfs.push(p0 * n + q0);
	while (!bfs.empty()) {
		auto u = bfs.front();
		bfs.pop();
		state_id p = static_cast<state_id>(u / n), q = static_cast<state_id>(u % n);
		if (dfa.is_accepting(p) != dfa.is_accepting(q)) {
			word z;
			for (std::ptrdiff_t v = static_cast<std::ptrdiff_t>(u); parent[v] != -1; v = parent[v])
				z.push_back(via[v]);
			std::reverse(z.begin(), z.end());
			return z;
		}
		for (symbol_id a = 0; a < k; ++a) {
			auto v = dfa.successors(p, a)[0] * n + dfa.successors(q, a)[0];
			if (parent[v] == -2) {
				parent[v] = static_cast<std::ptrdiff_t>(u);
				via[v] = a;
				bfs.push(v);
			}
		}
	}
	return std::nullopt; // equivalent states
}

// Two-way DFA to one-way DFA -----------------------------------------------

// Crossing-behavior construction. After reading a prefix |- w1..wk, the
// one-way state records
//   * where the run first arrives at cell k+1 (a state, or accept / reject),
//   * for every state p, the outcome of entering cell k from the right in p:
//     the state in which the head next reaches cell k+1, or accept / reject.
// Loops map to reject.
inline one_way_machine shepherdson(const two_way_machine& m, std::size_t budget = default_state_budget) {
	if (!m.is_deterministic())
		throw nondeterministic_machine();
	if (auto v = validate(m); !v.empty())
		throw invalid_machine(v.front());
	const std::uint32_t n = static_cast<std::uint32_t>(m.num_states());
	const std::uint32_t ACC = n, REJ = n + 1;
	const std::size_t k = m.sigma().size();

	using table = std::vector<std::uint32_t>;
	// Behavior at a cell holding `c`, with `left` the table of the prefix to its left.
	auto through = [&](std::uint32_t s, const table* left, tape_symbol c, bool right_end) -> std::uint32_t {
		std::vector<char> visited(n, 0);
		for (;;) {
			if (visited[s])
				return REJ;
			visited[s] = 1;
			if (m.is_accepting(s)) {
				if (m.mode() == accept_mode::anywhere)
					return ACC;
				if (m.mode() == accept_mode::on_right_end && right_end)
					return ACC;
				if (m.mode() == accept_mode::on_left_end && !left)
					return ACC;
			}
			auto tr = m.transitions(s, c);
			if (tr.empty())
				return REJ;
			switch (tr[0].dir) {
			case move::right: return tr[0].target;
			case move::stay: s = tr[0].target; break;
			case move::left: {
				auto r = (*left)[tr[0].target];
				if (r == ACC || r == REJ)
					return r;
				s = r;
				break;
			}
			case move::wrap: throw std::invalid_argument("shepherdson: wrap moves are not supported");
			}
		}
	};

	std::unordered_map<table, state_id, detail::vector_hash> index;
	std::vector<table> states;
	auto intern = [&](table t) {
		if (t[0] == ACC || t[0] == REJ)
			t.resize(1);
		auto [it, inserted] = index.emplace(t, static_cast<state_id>(states.size()));
		if (inserted) {
			if (states.size() >= budget)
				throw state_budget_exceeded("shepherdson construction exceeds " + std::to_string(budget) + " states");
			states.push_back(std::move(t));
		}
		return it->second;
	};

	// prefix "|-": key = (forward, T_0[0..n))
	table init(1 + n);
	for (std::uint32_t p = 0; p < n; ++p)
		init[1 + p] = through(p, nullptr, tape_symbol::left_end(), false);
	init[0] = m.start() == start_cell::cell0 ? init[1 + m.initial()] : m.initial();
	intern(std::move(init));

	std::vector<std::vector<state_id>> delta;
	for (std::size_t i = 0; i < states.size(); ++i) {
		delta.emplace_back(k);
		for (symbol_id a = 0; a < k; ++a) {
			const table cur = states[i];
			if (cur.size() == 1) {
				delta[i][a] = intern(cur);
				continue;
			}
			table left(cur.begin() + 1, cur.end());
			table next(1 + n);
			for (std::uint32_t p = 0; p < n; ++p)
				next[1 + p] = through(p, &left, tape_symbol::of(a), false);
			next[0] = through(cur[0], &left, tape_symbol::of(a), false);
			delta[i][a] = intern(std::move(next));
		}
	}

	one_way_machine out(m.sigma(), states.size());
	out.set_initial(0);
	for (state_id i = 0; i < states.size(); ++i) {
		const auto& t = states[i];
		bool acc;
		if (t.size() == 1)
			acc = t[0] == ACC;
		else {
			table left(t.begin() + 1, t.end());
			acc = through(t[0], &left, tape_symbol::right_end(), true) == ACC;
		}
		if (acc)
			out.add_accepting(i);
		for (symbol_id a = 0; a < k; ++a)
			out.add_transition(i, a, delta[i][a]);
	}
	return out;
}

// Rotating to sweeping -----------------------------------------------------

// Every state q gets a mirror q' that rewinds to |- and re-enters cell 1 in q.
// A wrap into q becomes a left move into q'. Exactly doubles the state count.
inline two_way_machine rotating_to_sweeping(const two_way_machine& m) {
	if (!is_rotating(m).holds)
		throw std::invalid_argument("rotating_to_sweeping: machine is not rotating");
	const auto n = static_cast<state_id>(m.num_states());
	auto names = m.state_names();
	for (state_id q = 0; q < n; ++q) {
		std::string base = m.state_name(q) + "'";
		std::string nm = base;
		for (int i = 1; std::find(names.begin(), names.end(), nm) != names.end(); ++i)
			nm = base + std::to_string(i);
		names.push_back(nm);
	}
	two_way_machine out(m.sigma(), names);
	out.set_initial(m.initial());
	for (state_id q : m.accepting())
		out.add_accepting(q);
	out.set_accept_mode(m.mode());
	out.set_start_cell(m.start());
	for (state_id q = 0; q < n; ++q)
		for (std::size_t col = 0; col < m.columns(); ++col) {
			auto on = tape_symbol::from_column(col, m.sigma().size());
			for (const auto& st : m.transitions(q, on)) {
				if (st.dir == move::wrap)
					out.add_transition(q, on, n + st.target, move::left);
				else
					out.add_transition(q, on, st.target, st.dir);
			}
		}
	for (state_id q = 0; q < n; ++q) {
		for (symbol_id a = 0; a < m.sigma().size(); ++a)
			out.add_transition(n + q, tape_symbol::of(a), n + q, move::left);
		out.add_transition(n + q, tape_symbol::left_end(), q, move::right);
	}
	return out;
}

// Chrobak normal form ------------------------------------------------------

// Deterministic tail t_0 .. t_{L-1} followed by disjoint deterministic cycles.
// The last tail state is the only branching state: it moves to offset 0 of
// every cycle. Offset j of a cycle stands for inputs of length L + j (mod its
// length). With an empty tail there is exactly one cycle and its offset 0 is initial.
struct chrobak_form {
	std::vector<bool> tail;
	std::vector<std::vector<bool>> cycles;

	std::size_t tail_length() const noexcept { return tail.size(); }
	std::size_t cycle_states() const noexcept {
		std::size_t s = 0;
		for (const auto& c : cycles)
			s += c.size();
		return s;
	}
	std::size_t num_states() const noexcept { return tail.size() + cycle_states(); }
	std::optional<std::size_t> branch() const {
		if (tail.empty())
			return std::nullopt;
		return tail.size() - 1;
	}
	bool degenerate() const noexcept { return tail.empty(); }

	bool accepts_length(std::uint64_t m) const {
		if (m < tail.size())
			return tail[m];
		const std::uint64_t off = m - tail.size();
		return std::any_of(cycles.begin(), cycles.end(), [&](const std::vector<bool>& c) { return c[off % c.size()]; });
	}
};

inline one_way_machine to_machine(const chrobak_form& f, const alphabet& sigma = alphabet({"a"})) {
	if (sigma.size() != 1)
		throw std::invalid_argument("Chrobak form needs a unary alphabet");
	std::vector<std::string> names;
	for (std::size_t i = 0; i < f.tail.size(); ++i)
		names.push_back("t" + std::to_string(i));
	for (std::size_t c = 0; c < f.cycles.size(); ++c)
		for (std::size_t j = 0; j < f.cycles[c].size(); ++j)
			names.push_back("c" + std::to_string(c) + "_" + std::to_string(j));
	if (names.empty())
		names.push_back("t0");
	one_way_machine m(sigma, names);
	m.set_initial(0);
	for (std::size_t i = 0; i < f.tail.size(); ++i) {
		if (f.tail[i])
			m.add_accepting(static_cast<state_id>(i));
		if (i + 1 < f.tail.size())
			m.add_transition(static_cast<state_id>(i), 0, static_cast<state_id>(i + 1));
	}
	std::size_t base = f.tail.size();
	for (const auto& c : f.cycles) {
		for (std::size_t j = 0; j < c.size(); ++j) {
			if (c[j])
				m.add_accepting(static_cast<state_id>(base + j));
			m.add_transition(static_cast<state_id>(base + j), 0, static_cast<state_id>(base + (j + 1) % c.size()));
		}
		if (!f.tail.empty())
			m.add_transition(static_cast<state_id>(f.tail.size() - 1), 0, static_cast<state_id>(base));
		base += c.size();
	}
	return m;
}

namespace detail {

inline std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

inline std::uint64_t step_mask(std::span<const std::uint64_t> succ, std::uint64_t s) {
	std::uint64_t r = 0;
	for (std::size_t q = 0; s; ++q, s >>= 1)
		if (s & 1)
			r |= succ[q];
	return r;
}

// Tarjan SCCs over successor masks; returns component id per state.
inline std::vector<int> scc(std::span<const std::uint64_t> succ) {
	const int n = static_cast<int>(succ.size());
	std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stack;
	std::vector<char> on(n, 0);
	int counter = 0, ncomp = 0;
	std::function<void(int)> dfs = [&](int v) {
		idx[v] = low[v] = counter++;
		stack.push_back(v);
		on[v] = 1;
		for (int w = 0; w < n; ++w) {
			if (!(succ[v] & bit(w)))
				continue;
			if (idx[w] < 0) {
				dfs(w);
				low[v] = std::min(low[v], low[w]);
			} else if (on[w]) {
				low[v] = std::min(low[v], idx[w]);
			}
		}
		if (low[v] == idx[v]) {
			for (;;) {
				int w = stack.back();
				stack.pop_back();
				on[w] = 0;
				comp[w] = ncomp;
				if (w == v)
					break;
			}
			++ncomp;
		}
	};
	for (int v = 0; v < n; ++v)
		if (idx[v] < 0)
			dfs(v);
	return comp;
}

} // namespace detail

inline constexpr std::uint64_t default_chrobak_horizon = 10'000'000;

// Unary NFA to Chrobak normal form. Every nontrivial strongly connected
// component C useful for acceptance contributes one cycle whose length
// divides the period of C; the tail covers every length before all per-
// component acceptance patterns become periodic.
inline chrobak_form chrobak_normal_form(const one_way_machine& nfa,
	std::uint64_t horizon = default_chrobak_horizon) {
	if (nfa.sigma().size() != 1)
		throw std::invalid_argument("chrobak_normal_form: alphabet must be unary");
	const std::size_t n = nfa.num_states();
	if (n == 0 || n > 64)
		throw std::invalid_argument("chrobak_normal_form: supports 1..64 states");
	std::vector<std::uint64_t> succ(n, 0);
	for (state_id q = 0; q < n; ++q)
		for (state_id t : nfa.successors(q, 0))
			succ[q] |= detail::bit(t);
	std::uint64_t final_mask = 0;
	for (state_id q : nfa.accepting())
		final_mask |= detail::bit(q);

	// reachable / co-reachable
	std::uint64_t reach = detail::bit(nfa.initial()), frontier = reach;
	while (frontier) {
		auto nx = detail::step_mask(succ, frontier) & ~reach;
		reach |= nx;
		frontier = nx;
	}
	std::uint64_t coreach = final_mask;
	for (bool changed = true; changed;) {
		changed = false;
		for (std::size_t q = 0; q < n; ++q)
			if (!(coreach & detail::bit(q)) && (succ[q] & coreach)) {
				coreach |= detail::bit(q);
				changed = true;
			}
	}
	const std::uint64_t useful = reach & coreach;

	auto comp = detail::scc(succ);
	struct component {
		std::uint64_t mask = 0;
		std::uint64_t period = 0;
	};
	std::map<int, component> comps;
	for (std::size_t q = 0; q < n; ++q)
		if (useful & detail::bit(q))
			comps[comp[q]].mask |= detail::bit(q);
	std::vector<component> cyc;
	for (auto& [id, c] : comps) {
		// BFS levels inside the component; period = gcd of level differences along internal edges
		std::vector<long> level(n, -1);
		int root = std::countr_zero(c.mask);
		level[root] = 0;
		std::vector<int> q{root};
		bool has_edge = false;
		std::uint64_t g = 0;
		for (std::size_t i = 0; i < q.size(); ++i) {
			int u = q[i];
			for (std::size_t v = 0; v < n; ++v) {
				if (!(succ[u] & detail::bit(v)) || !(c.mask & detail::bit(v)))
					continue;
				has_edge = true;
				if (level[v] < 0) {
					level[v] = level[u] + 1;
					q.push_back(static_cast<int>(v));
				} else {
					long d = level[u] + 1 - level[v];
					g = std::gcd(g, static_cast<std::uint64_t>(d < 0 ? -d : d));
				}
			}
		}
		if (!has_edge)
			continue; // trivial component
		c.period = g;
		cyc.push_back(c);
	}

	// Per-component acceptance sequences: lengths of accepting paths through C.
	// The pair (not yet in C, already in C) evolves deterministically, so the
	// sequence is eventually periodic; find where it becomes period-d periodic.
	struct pattern {
		std::uint64_t len;
		std::vector<bool> residues;
		std::uint64_t threshold;
	};
	std::vector<pattern> patterns;
	std::uint64_t max_threshold = 0;
	for (const auto& c : cyc) {
		std::uint64_t a0 = detail::bit(nfa.initial()), b0 = 0;
		if (c.mask & a0) {
			b0 = a0;
			a0 = 0;
		}
		std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> first;
		std::vector<bool> acc;
		std::uint64_t a = a0, b = b0, mu = 0, lambda = 0;
		for (std::uint64_t t = 0;; ++t) {
			if (t > horizon)
				throw state_budget_exceeded("chrobak_normal_form: periodicity horizon exceeded");
			auto [it, inserted] = first.emplace(std::make_pair(a, b), t);
			if (!inserted) {
				mu = it->second;
				lambda = t - mu;
				break;
			}
			acc.push_back((b & final_mask) != 0);
			auto sa = detail::step_mask(succ, a), sb = detail::step_mask(succ, b);
			a = sa & ~c.mask;
			b = sb | (sa & c.mask);
		}
		auto value = [&](std::uint64_t m) { return m < mu ? acc[m] : acc[mu + (m - mu) % lambda]; };
		const std::uint64_t d = c.period;
		for (std::uint64_t m = mu; m < mu + lambda; ++m)
			if (value(m) != value(m + d))
				throw std::logic_error("chrobak_normal_form: component pattern is not periodic in its period");
		std::uint64_t threshold = 0;
		for (std::uint64_t m = mu; m-- > 0;)
			if (value(m) != value(m + d)) {
				threshold = m + 1;
				break;
			}
		std::vector<bool> res(d);
		bool any = false;
		for (std::uint64_t r = 0; r < d; ++r) {
			std::uint64_t m = threshold + ((r + d - threshold % d) % d);
			res[r] = value(m);
			any = any || res[r];
		}
		if (!any)
			continue;
		// shrink to the least period of the residue pattern
		std::uint64_t e = d;
		for (std::uint64_t cand = 1; cand < d; ++cand) {
			if (d % cand)
				continue;
			bool ok = true;
			for (std::uint64_t r = 0; r < d && ok; ++r)
				ok = res[r] == res[r % cand];
			if (ok) {
				e = cand;
				break;
			}
		}
		res.resize(e);
		patterns.push_back({e, res, threshold});
		max_threshold = std::max(max_threshold, threshold);
	}

	auto periodic_part = [&](std::uint64_t m) {
		return std::any_of(patterns.begin(), patterns.end(),
			[&](const pattern& p) { return static_cast<bool>(p.residues[m % p.len]); });
	};
	// Every accepting path of length >= n crosses a useful nontrivial component,
	// so beyond max(n, thresholds) the language equals the periodic part.
	const std::uint64_t horizon_m = std::max<std::uint64_t>(n, max_threshold);
	std::vector<bool> direct;
	std::uint64_t s = detail::bit(nfa.initial());
	for (std::uint64_t m = 0; m < horizon_m; ++m) {
		direct.push_back((s & final_mask) != 0);
		s = detail::step_mask(succ, s);
	}
	std::uint64_t tail_len = horizon_m;
	while (tail_len > 0 && direct[tail_len - 1] == periodic_part(tail_len - 1))
		--tail_len;
	if (tail_len == 0 && patterns.size() != 1)
		tail_len = 1; // a branching state is needed, or the language is empty/finite

	chrobak_form f;
	for (std::uint64_t m = 0; m < tail_len; ++m)
		f.tail.push_back(m < direct.size() ? static_cast<bool>(direct[m]) : periodic_part(m));
	for (const auto& p : patterns) {
		std::vector<bool> c(p.len);
		for (std::uint64_t j = 0; j < p.len; ++j)
			c[j] = p.residues[(tail_len + j) % p.len];
		f.cycles.push_back(std::move(c));
	}
	return f;
}

// Equivalence --------------------------------------------------------------

enum class equivalence_method : std::uint8_t { bounded, exact_via_minimization, exact_via_shepherdson };

struct equivalence_verdict {
	bool equivalent = true;
	std::optional<word> witness; // over the alphabet of the first machine
	equivalence_method method = equivalence_method::bounded;
	std::size_t bound = 0;
};

// Exhaustive comparison on every word of length <= max_len, shortlex order.
inline equivalence_verdict bounded_equiv(const any_machine& a, const any_machine& b, std::size_t max_len) {
	auto tr = detail::symbol_translation(sigma_of(a), sigma_of(b));
	equivalence_verdict v;
	v.bound = max_len;
	word wb;
	for_each_word(sigma_of(a).size(), max_len, [&](const word& w) {
		wb.resize(w.size());
		for (std::size_t i = 0; i < w.size(); ++i)
			wb[i] = tr[w[i]];
		if (accepts(a, w) != accepts(b, wb)) {
			v.equivalent = false;
			v.witness = w;
			return false;
		}
		return true;
	});
	return v;
}

// Minimal DFAs compared for isomorphism; a shortest counterexample comes from
// BFS over their product.
inline equivalence_verdict exact_equiv_oneway(const one_way_machine& a, const one_way_machine& b) {
	auto da = minimize(determinize(a));
	auto db = minimize(determinize(remap_alphabet(b, a.sigma())));
	equivalence_verdict v;
	v.method = equivalence_method::exact_via_minimization;
	if (isomorphic(da, db))
		return v;
	v.equivalent = false;
	const std::size_t nb = db.num_states(), k = da.sigma().size();
	std::vector<std::ptrdiff_t> parent(da.num_states() * nb, -2);
	std::vector<symbol_id> via(parent.size(), 0);
	std::queue<std::size_t> bfs;
	auto start = da.initial() * nb + db.initial();
	parent[start] = -1;
	bfs.push(start);
	while (!bfs.empty()) {
		auto u = bfs.front();
		bfs.pop();
		state_id p = static_cast<state_id>(u / nb), q = static_cast<state_id>(u % nb);
		if (da.is_accepting(p) != db.is_accepting(q)) {
			word z;
			for (auto x = static_cast<std::ptrdiff_t>(u); parent[x] != -1; x = parent[x])
				z.push_back(via[x]);
			std::reverse(z.begin(), z.end());
			v.witness = z;
			return v;
		}
		for (symbol_id s = 0; s < k; ++s) {
			auto w = da.successors(p, s)[0] * nb + db.successors(q, s)[0];
			if (parent[w] == -2) {
				parent[w] = static_cast<std::ptrdiff_t>(u);
				via[w] = s;
				bfs.push(w);
			}
		}
	}
	throw std::logic_error("exact_equiv_oneway: non-isomorphic minimal DFAs without a counterexample");
}

// Exact equivalence of arbitrary deterministic-or-one-way machines; two-way
// DFAs are first converted with shepherdson.
inline equivalence_verdict exact_equiv(const any_machine& a, const any_machine& b) {
	bool via_shepherdson = false;
	auto to_oneway = [&](const any_machine& m) -> one_way_machine {
		if (auto p = std::get_if<one_way_machine>(&m))
			return *p;
		const auto& t = std::get<two_way_machine>(m);
		if (!t.is_deterministic())
			throw nondeterministic_machine();
		via_shepherdson = true;
		return shepherdson(is_rotating(t).holds && t.num_transitions() ? rotating_to_sweeping(t) : t);
	};
	auto v = exact_equiv_oneway(to_oneway(a), to_oneway(b));
	if (via_shepherdson)
		v.method = equivalence_method::exact_via_shepherdson;
	return v;
}

} // namespace twfa

#endif
