// unary_gap.hpp -- prime-encoded graphs and unary two-way simulation
//
// A digraph on vertices 0..n-1 is encoded as the product of the primes
// p(i,j) = nth_prime(i*n + j + 1) over its edges. The unary machine A_n
// accepts a^m iff the graph decoded from m has a path from 0 to n-1.
//
// Unary quasi-sweeping machines (reversals and nondeterminism only on the
// endmarkers) are simulated on lengths alone: a traversal of a^m is a
// deterministic orbit under a one-cell step map, evaluated by tail/cycle
// arithmetic on m.
#ifndef TWFA_UNARY_GAP_HPP
#define TWFA_UNARY_GAP_HPP

#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "core.hpp"
#include "primes.hpp"

namespace twfa {

struct not_quasi_sweeping : error {
	using error::error;
};

// Graphs ------------------------------------------------------------------

struct digraph {
	std::size_t n = 0;
	std::set<std::pair<std::size_t, std::size_t>> edges;

	bool operator==(const digraph&) const = default;
};

inline std::uint64_t edge_prime(std::size_t i, std::size_t j, std::size_t n) {
	if (i >= n || j >= n)
		throw std::invalid_argument("edge endpoint out of range");
	return nth_prime(i * n + j + 1);
}

inline unary_length encode_graph(const digraph& g) {
	unary_length m = 1;
	for (auto [i, j] : g.edges)
		m *= edge_prime(i, j, g.n);
	return m;
}

inline digraph decode_graph(const unary_length& m, std::size_t n) {
	if (m < 1)
		throw std::invalid_argument("decode_graph needs m >= 1");
	digraph g{n, {}};
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			if (m % edge_prime(i, j, n) == 0)
				g.edges.emplace(i, j);
	return g;
}

// Is n-1 reachable from 0? With one vertex, s = t and the answer is yes.
inline bool bfs_gap(const digraph& g) {
	if (g.n == 0)
		throw std::invalid_argument("bfs_gap needs at least one vertex");
	std::vector<std::vector<std::size_t>> adj(g.n);
	for (auto [i, j] : g.edges)
		adj[i].push_back(j);
	std::vector<char> seen(g.n, 0);
	std::vector<std::size_t> queue{0};
	seen[0] = 1;
	for (std::size_t k = 0; k < queue.size(); ++k)
		for (auto v : adj[queue[k]])
			if (!seen[v]) {
				seen[v] = 1;
				queue.push_back(v);
			}
	return seen[g.n - 1];
}

//   n <count>
//   edge <i> <j>
inline digraph parse_graph(std::istream& in) {
	digraph g;
	bool have_n = false;
	std::string line;
	std::size_t lineno = 0;
	std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> pending;
	while (std::getline(in, line)) {
		++lineno;
		if (auto h = line.find('#'); h != std::string::npos)
			line.erase(h);
		std::istringstream ls(line);
		std::string key;
		if (!(ls >> key))
			continue;
		auto fail = [&](const std::string& msg) { return format_error("line " + std::to_string(lineno) + ": " + msg); };
		long long a = -1, b = -1;
		std::string extra;
		if (key == "n") {
			if (have_n)
				throw fail("duplicate 'n' line");
			if (!(ls >> a) || a < 1 || (ls >> extra))
				throw fail("expected 'n <count>' with count >= 1");
			g.n = static_cast<std::size_t>(a);
			have_n = true;
		} else if (key == "edge") {
			if (!(ls >> a >> b) || a < 0 || b < 0 || (ls >> extra))
				throw fail("expected 'edge <i> <j>'");
			pending.push_back({lineno, {static_cast<std::size_t>(a), static_cast<std::size_t>(b)}});
		} else {
			throw fail("unknown directive '" + key + "'");
		}
	}
	if (!have_n)
		throw format_error("missing 'n <count>' line");
	for (auto& [ln, e] : pending) {
		if (e.first >= g.n || e.second >= g.n)
			throw format_error("line " + std::to_string(ln) + ": vertex out of range");
		g.edges.insert(e);
	}
	return g;
}

inline digraph parse_graph(const std::string& text) {
	std::istringstream in(text);
	return parse_graph(in);
}

inline std::string serialize(const digraph& g) {
	std::string s = "n " + std::to_string(g.n) + "\n";
	for (auto [i, j] : g.edges)
		s += "edge " + std::to_string(i) + " " + std::to_string(j) + "\n";
	return s;
}

// The machine A_n -----------------------------------------------------------

// States: v0 (vertex 0 on |- before the first move), counting loops
// r_i_j_k (rightward, k = cells read mod p(i,j)) and l_i_j_k (leftward),
// and acc. Reaching an endmarker with remainder 0 in the (i,j) loop means
// the edge is present, so the machine stands at vertex j there. From a
// vertex it guesses the next edge; at vertex n-1 it accepts. Every other
// remainder hangs on the endmarker.
inline two_way_machine build_unary_gap_2nfa(std::size_t n) {
	if (n < 2)
		throw std::invalid_argument("A_n needs n >= 2");
	two_way_machine m(alphabet({"a"}), std::vector<std::string>{});
	const state_id v0 = m.add_state("v0");
	std::vector<std::vector<state_id>> r_base(n, std::vector<state_id>(n)), l_base(n, std::vector<state_id>(n));
	std::vector<std::vector<std::uint64_t>> p(n, std::vector<std::uint64_t>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			p[i][j] = edge_prime(i, j, n);
			const std::string ij = std::to_string(i) + "_" + std::to_string(j) + "_";
			r_base[i][j] = static_cast<state_id>(m.num_states());
			for (std::uint64_t k = 0; k < p[i][j]; ++k)
				m.add_state("r" + ij + std::to_string(k));
			l_base[i][j] = static_cast<state_id>(m.num_states());
			for (std::uint64_t k = 0; k < p[i][j]; ++k)
				m.add_state("l" + ij + std::to_string(k));
		}
	const state_id acc = m.add_state("acc");
	const auto A = tape_symbol::of(0);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			for (std::uint64_t k = 0; k < p[i][j]; ++k) {
				const auto nk = static_cast<state_id>((k + 1) % p[i][j]);
				m.add_transition(r_base[i][j] + static_cast<state_id>(k), A, r_base[i][j] + nk, move::right);
				m.add_transition(l_base[i][j] + static_cast<state_id>(k), A, l_base[i][j] + nk, move::left);
			}
	// vertex j standing on |- (state q) guesses the next edge (j, k)
	auto leave_left = [&](state_id q, std::size_t j) {
		if (j == n - 1) {
			m.add_transition(q, tape_symbol::left_end(), acc, move::stay);
			return;
		}
		for (std::size_t k = 0; k < n; ++k)
			m.add_transition(q, tape_symbol::left_end(), r_base[j][k], move::right);
	};
	auto leave_right = [&](state_id q, std::size_t j) {
		if (j == n - 1) {
			m.add_transition(q, tape_symbol::right_end(), acc, move::stay);
			return;
		}
		for (std::size_t k = 0; k < n; ++k)
			m.add_transition(q, tape_symbol::right_end(), l_base[j][k], move::left);
	};
	leave_left(v0, 0);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			leave_right(r_base[i][j], j);
			leave_left(l_base[i][j], j);
		}
	m.set_initial(v0);
	m.add_accepting(acc);
	m.set_start_cell(start_cell::cell0);
	m.set_accept_mode(accept_mode::anywhere);
	return m;
}

// Length-only traversal -----------------------------------------------------

enum class side : std::uint8_t { left, right };

// Orbits of the one-cell step map for a unary machine, cached per direction
// and start state. Not thread-safe; use one per thread.
class unary_sweeper {
public:
	explicit unary_sweeper(const two_way_machine& m) : m_(m) {
		if (m.sigma().size() != 1)
			throw std::invalid_argument("unary_sweeper needs a unary alphabet");
		for (int d = 0; d < 2; ++d) {
			step_[d].assign(m.num_states(), std::nullopt);
			orbit_[d].assign(m.num_states(), std::nullopt);
		}
	}

	// State in which a traversal of a^m that enters the first cell from
	// `from_side` in `from_state` reaches the opposite endmarker; nullopt if
	// the run hangs or loops on the way. With m = 0 that is `from_state`.
	std::optional<state_id> landing(state_id from_state, side from_side, const unary_length& m) {
		const int d = from_side == side::left ? 0 : 1;
		const orbit& o = get_orbit(d, from_state);
		// o.path[i] = state entering cell i+1 of the traversal
		if (m < o.path.size())
			return o.path[static_cast<std::size_t>(m)];
		if (o.end == orbit::ending::stop) {
			if (o.error)
				throw not_quasi_sweeping(*o.error);
			return std::nullopt;
		}
		const unary_length offset = (m - o.cycle_start) % o.cycle_len;
		return o.path[o.cycle_start + static_cast<std::size_t>(offset)];
	}

	std::optional<state_id> landing(state_id from_state, side from_side, std::uint64_t m) {
		return landing(from_state, from_side, unary_length(m));
	}

private:
	struct outcome {
		std::optional<state_id> next; // nullopt: hang
		std::optional<std::string> error;
	};
	struct orbit {
		enum class ending : std::uint8_t { stop, cycle };
		std::vector<state_id> path;
		ending end = ending::stop;
		std::size_t cycle_start = 0, cycle_len = 0;
		std::optional<std::string> error; // raised if the traversal reaches the stopping cell
	};

	// One cell of a traversal in direction d, entered in state q.
	outcome step(int d, state_id q) {
		auto& slot = step_[d][q];
		if (slot)
			return *slot;
		const move forward = d == 0 ? move::right : move::left;
		const auto A = tape_symbol::of(0);
		outcome out;
		std::vector<char> seen(m_.num_states(), 0);
		state_id s = q;
		for (;;) {
			if (seen[s]) {
				out.next = std::nullopt; // stay loop: hangs
				break;
			}
			seen[s] = 1;
			if (m_.is_accepting(s) && m_.mode() == accept_mode::anywhere) {
				out.error = "state " + m_.state_name(s) + " accepts in the middle of the tape";
				break;
			}
			auto tr = m_.transitions(s, A);
			if (tr.empty())
				break;
			if (tr.size() > 1) {
				out.error = "nondeterministic choice at " + describe(m_, s, A);
				break;
			}
			if (tr[0].dir == move::stay) {
				s = tr[0].target;
				continue;
			}
			if (tr[0].dir != forward) {
				out.error = "reversal inside the tape at " + describe(m_, s, A);
				break;
			}
			out.next = tr[0].target;
			break;
		}
		slot = out;
		return out;
	}

	const orbit& get_orbit(int d, state_id q) {
		auto& slot = orbit_[d][q];
		if (slot)
			return *slot;
		orbit o;
		std::vector<std::ptrdiff_t> index(m_.num_states(), -1);
		state_id s = q;
		for (;;) {
			if (index[s] >= 0) {
				o.end = orbit::ending::cycle;
				o.cycle_start = static_cast<std::size_t>(index[s]);
				o.cycle_len = o.path.size() - o.cycle_start;
				break;
			}
			index[s] = static_cast<std::ptrdiff_t>(o.path.size());
			o.path.push_back(s);
			auto st = step(d, s);
			if (!st.next) {
				o.error = st.error;
				break;
			}
			s = *st.next;
		}
		slot = std::move(o);
		return *slot;
	}

	const two_way_machine& m_;
	std::vector<std::optional<outcome>> step_[2];
	std::vector<std::optional<orbit>> orbit_[2];
};

inline std::optional<state_id> sweep_landing(const two_way_machine& m, state_id from_state, side from_side,
	const unary_length& len) {
	return unary_sweeper(m).landing(from_state, from_side, len);
}

// Endmarker configuration graph G(m) ----------------------------------------

struct endmarker_config_graph {
	enum class edge_kind : std::uint8_t { traversal, stationary };
	struct edge {
		std::size_t to;
		edge_kind kind;
	};

	std::size_t num_states = 0;
	// vertex (side, q) has index side * num_states + q
	std::vector<std::vector<edge>> adj;
	std::size_t source = 0;
	std::vector<char> sink;

	std::size_t index(side s, state_id q) const { return (s == side::left ? 0 : num_states) + q; }
	std::pair<side, state_id> vertex(std::size_t v) const {
		return v < num_states ? std::pair{side::left, static_cast<state_id>(v)}
		                      : std::pair{side::right, static_cast<state_id>(v - num_states)};
	}
	std::size_t num_edges() const {
		std::size_t e = 0;
		for (const auto& a : adj)
			e += a.size();
		return e;
	}

	bool accepts() const {
		std::vector<char> seen(adj.size(), 0);
		std::vector<std::size_t> stack{source};
		seen[source] = 1;
		while (!stack.empty()) {
			auto v = stack.back();
			stack.pop_back();
			if (sink[v])
				return true;
			for (const auto& e : adj[v])
				if (!seen[e.to]) {
					seen[e.to] = 1;
					stack.push_back(e.to);
				}
		}
		return false;
	}
};

namespace detail {
inline void require_unary_endmarker_start(const two_way_machine& m) {
	if (m.sigma().size() != 1)
		throw std::invalid_argument("unary machine expected");
	if (m.start() != start_cell::cell0)
		throw std::invalid_argument("unary simulation needs a machine that starts on |-");
}
} // namespace detail

inline endmarker_config_graph build_endmarker_config_graph(const two_way_machine& m, const unary_length& len,
	unary_sweeper& sweeper) {
	detail::require_unary_endmarker_start(m);
	endmarker_config_graph g;
	const auto n = m.num_states();
	g.num_states = n;
	g.adj.resize(2 * n);
	g.sink.assign(2 * n, 0);
	g.source = g.index(side::left, m.initial());
	for (state_id q = 0; q < n; ++q)
		for (side s : {side::left, side::right}) {
			const auto v = g.index(s, q);
			if (m.is_accepting(q) &&
				(m.mode() == accept_mode::anywhere ||
					(m.mode() == accept_mode::on_left_end && s == side::left) ||
					(m.mode() == accept_mode::on_right_end && s == side::right))) {
				g.sink[v] = 1;
				continue;
			}
			const auto on = s == side::left ? tape_symbol::left_end() : tape_symbol::right_end();
			const move inward = s == side::left ? move::right : move::left;
			const side opposite = s == side::left ? side::right : side::left;
			for (const auto& st : m.transitions(q, on)) {
				if (st.dir == move::stay) {
					g.adj[v].push_back({g.index(s, st.target), endmarker_config_graph::edge_kind::stationary});
				} else if (st.dir == inward) {
					if (auto land = sweeper.landing(st.target, s, len))
						g.adj[v].push_back({g.index(opposite, *land), endmarker_config_graph::edge_kind::traversal});
				} else {
					throw not_quasi_sweeping("wrap move at " + describe(m, q, on));
				}
			}
		}
	return g;
}

inline endmarker_config_graph build_endmarker_config_graph(const two_way_machine& m, const unary_length& len) {
	unary_sweeper sw(m);
	return build_endmarker_config_graph(m, len, sw);
}

inline bool accepts_unary(const two_way_machine& m, const unary_length& len) {
	return build_endmarker_config_graph(m, len).accepts();
}

inline bool solve_gap_via_unary(const digraph& g) {
	if (g.n == 1)
		return true;
	return accepts_unary(build_unary_gap_2nfa(g.n), encode_graph(g));
}

// Divide-and-conquer recognizer ----------------------------------------------

// Works on the machine converted to left-endmarker acceptance. A visit is a
// configuration on |-; reachable(p, q, k) asks for a path from p on |- to q
// on |- with at most k visits, both ends included.
class dnc_recognizer {
public:
	explicit dnc_recognizer(const two_way_machine& machine)
		: m_(with_accept_mode(machine, accept_mode::on_left_end)), sweeper_(m_) {
		detail::require_unary_endmarker_start(m_);
	}

	const two_way_machine& machine() const noexcept { return m_; }

	bool reachable(state_id p, state_id q, std::size_t k, const unary_length& len) {
		prepare(len);
		return reach(p, q, k);
	}

	bool accepts(const unary_length& len) {
		prepare(len);
		for (state_id f : m_.accepting())
			if (reach(m_.initial(), f, m_.num_states()))
				return true;
		return false;
	}

	// (p, q, k) entries computed for the current length.
	std::size_t memo_size() const noexcept { return memo_.size(); }

private:
	void prepare(const unary_length& len) {
		if (have_len_ && len == len_)
			return;
		len_ = len;
		have_len_ = true;
		memo_.clear();
		const auto n = m_.num_states();
		step_.assign(n, {});
		// states that can stand on |-: the initial one, stay targets, landings
		std::vector<char> on_left(n, 0);
		on_left[m_.initial()] = 1;
		auto right_closure = [&](state_id s) {
			std::vector<state_id> out{s};
			std::vector<char> seen(n, 0);
			seen[s] = 1;
			for (std::size_t i = 0; i < out.size(); ++i) {
				if (m_.is_accepting(out[i]) && m_.mode() != accept_mode::on_left_end)
					continue;
				for (const auto& st : m_.transitions(out[i], tape_symbol::right_end())) {
					if (st.dir == move::stay && !seen[st.target]) {
						seen[st.target] = 1;
						out.push_back(st.target);
					} else if (st.dir == move::wrap) {
						throw not_quasi_sweeping("wrap move at " + describe(m_, out[i], tape_symbol::right_end()));
					}
				}
			}
			return out;
		};
		for (state_id p = 0; p < n; ++p) {
			if (m_.is_accepting(p))
				continue; // accepting on |- halts
			std::set<state_id> next;
			for (const auto& st : m_.transitions(p, tape_symbol::left_end())) {
				if (st.dir == move::stay) {
					next.insert(st.target);
					continue;
				}
				auto land = sweeper_.landing(st.target, side::left, len);
				if (!land)
					continue;
				for (state_id s : right_closure(*land))
					for (const auto& back : m_.transitions(s, tape_symbol::right_end()))
						if (back.dir == move::left)
							if (auto home = sweeper_.landing(back.target, side::right, len))
								next.insert(*home);
			}
			step_[p].assign(next.begin(), next.end());
			for (state_id t : next)
				on_left[t] = 1;
		}
		candidates_.clear();
		for (state_id q = 0; q < n; ++q)
			if (on_left[q])
				candidates_.push_back(q);
	}

	bool step(state_id p, state_id q) const { return std::binary_search(step_[p].begin(), step_[p].end(), q); }

	bool reach(state_id p, state_id q, std::size_t k) {
		if (k == 0)
			return false;
		if (p == q)
			return true;
		if (k == 1)
			return false;
		if (k == 2)
			return step(p, q);
		const auto key = std::tuple{p, q, k};
		if (auto it = memo_.find(key); it != memo_.end())
			return it->second;
		const std::size_t first = (k + 1) / 2, second = k / 2 + 1;
		bool found = false;
		for (state_id r : candidates_)
			if (reach(p, r, first) && reach(r, q, second)) {
				found = true;
				break;
			}
		memo_.emplace(key, found);
		return found;
	}

	two_way_machine m_;
	unary_sweeper sweeper_;
	unary_length len_;
	bool have_len_ = false;
	std::vector<std::vector<state_id>> step_;
	std::vector<state_id> candidates_;
	std::map<std::tuple<state_id, state_id, std::size_t>, bool> memo_;
};

inline bool reachable_divide_conquer(const two_way_machine& m, state_id p, state_id q, std::size_t k,
	const unary_length& len) {
	return dnc_recognizer(m).reachable(p, q, k, len);
}

inline bool decide_membership_dnc(const two_way_machine& m, const unary_length& len) {
	return dnc_recognizer(m).accepts(len);
}

// Recognizer with a finite table of corrections for short inputs.
class patched_recognizer {
public:
	using base_fn = std::function<bool(const unary_length&)>;

	patched_recognizer(base_fn base, std::uint64_t limit) : base_(std::move(base)), limit_(limit) {}

	void set_exception(std::uint64_t m, bool verdict) {
		if (m > limit_)
			throw std::invalid_argument("exception beyond the patch limit");
		table_[m] = verdict;
	}

	bool operator()(const unary_length& m) const {
		if (m <= limit_)
			if (auto it = table_.find(static_cast<std::uint64_t>(m)); it != table_.end())
				return it->second;
		return base_(m);
	}

	std::uint64_t limit() const noexcept { return limit_; }
	std::size_t exceptions() const noexcept { return table_.size(); }

private:
	base_fn base_;
	std::uint64_t limit_;
	std::map<std::uint64_t, bool> table_;
};

} // namespace twfa

#endif
