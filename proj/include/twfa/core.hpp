// core.hpp -- automaton types and exact simulation semantics
//
// Two-way machines run over the endmarked tape |- w -| with cells numbered
// 0 .. |w|+1. One-way machines are classical NFAs/DFAs without epsilon moves.
#ifndef TWFA_CORE_HPP
#define TWFA_CORE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace twfa {

using state_id = std::uint32_t;
using symbol_id = std::uint32_t;
using word = std::vector<symbol_id>;

// Errors -------------------------------------------------------------------

struct error : std::runtime_error {
	using std::runtime_error::runtime_error;
};
struct nondeterministic_machine : error {
	nondeterministic_machine() : error("machine is nondeterministic") {}
};
struct invalid_machine : error {
	using error::error;
};
struct format_error : error {
	using error::error;
};

// Alphabet -----------------------------------------------------------------

inline bool is_valid_token(std::string_view s) {
	if (s.empty() || s == "|-" || s == "-|")
		return false;
	return std::none_of(s.begin(), s.end(), [](char c) {
		return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#';
	});
}

class alphabet {
public:
	alphabet() = default;
	explicit alphabet(std::vector<std::string> names) : names_(std::move(names)) {
		for (symbol_id i = 0; i < names_.size(); ++i)
			index_.emplace(names_[i], i);
	}

	std::size_t size() const noexcept { return names_.size(); }
	const std::string& name(symbol_id s) const { return names_.at(s); }
	const std::vector<std::string>& names() const noexcept { return names_; }

	std::optional<symbol_id> find(std::string_view n) const {
		auto it = index_.find(std::string(n));
		if (it == index_.end())
			return std::nullopt;
		return it->second;
	}

	bool single_char_names() const {
		return std::all_of(names_.begin(), names_.end(), [](const std::string& s) { return s.size() == 1; });
	}

	// Whitespace-separated tokens, or one symbol per character when every name is a single char.
	word parse_word(std::string_view text) const {
		word w;
		bool spaced = text.find_first_of(" \t") != std::string_view::npos;
		if (!spaced && single_char_names()) {
			for (char c : text) {
				auto s = find(std::string_view(&c, 1));
				if (!s)
					throw format_error("unknown symbol '" + std::string(1, c) + "'");
				w.push_back(*s);
			}
			return w;
		}
		std::size_t i = 0;
		while (i < text.size()) {
			while (i < text.size() && (text[i] == ' ' || text[i] == '\t'))
				++i;
			std::size_t j = i;
			while (j < text.size() && text[j] != ' ' && text[j] != '\t')
				++j;
			if (j > i) {
				auto tok = text.substr(i, j - i);
				auto s = find(tok);
				if (!s)
					throw format_error("unknown symbol '" + std::string(tok) + "'");
				w.push_back(*s);
			}
			i = j;
		}
		return w;
	}

	std::string format_word(std::span<const symbol_id> w) const {
		std::string out;
		bool sep = !single_char_names();
		for (std::size_t i = 0; i < w.size(); ++i) {
			if (sep && i)
				out += ' ';
			out += name(w[i]);
		}
		return out;
	}

	bool operator==(const alphabet& o) const { return names_ == o.names_; }

private:
	std::vector<std::string> names_;
	std::unordered_map<std::string, symbol_id> index_;
};

// Tape symbols and moves ---------------------------------------------------

class tape_symbol {
public:
	enum class kind : std::uint8_t { real, left_end, right_end };

	static constexpr tape_symbol left_end() { return tape_symbol(kind::left_end, 0); }
	static constexpr tape_symbol right_end() { return tape_symbol(kind::right_end, 0); }
	static constexpr tape_symbol of(symbol_id s) { return tape_symbol(kind::real, s); }

	constexpr kind type() const noexcept { return kind_; }
	constexpr bool is_real() const noexcept { return kind_ == kind::real; }
	constexpr symbol_id symbol() const noexcept { return sym_; }

	// Column in a transition table: real symbols first, then |- and -|.
	constexpr std::size_t column(std::size_t alphabet_size) const noexcept {
		switch (kind_) {
		case kind::real: return sym_;
		case kind::left_end: return alphabet_size;
		default: return alphabet_size + 1;
		}
	}
	static constexpr tape_symbol from_column(std::size_t col, std::size_t alphabet_size) {
		if (col == alphabet_size)
			return left_end();
		if (col == alphabet_size + 1)
			return right_end();
		return of(static_cast<symbol_id>(col));
	}

	constexpr bool operator==(const tape_symbol&) const = default;

private:
	constexpr tape_symbol(kind k, symbol_id s) : kind_(k), sym_(s) {}
	kind kind_;
	symbol_id sym_;
};

// `wrap` is the rotating-automaton move: legal only on -|, it re-enters the tape at cell 1.
enum class move : std::uint8_t { left, right, stay, wrap };

enum class accept_mode : std::uint8_t { anywhere, on_right_end, on_left_end };
enum class start_cell : std::uint8_t { cell0, cell1 };

struct two_way_step {
	state_id target;
	move dir;
	auto operator<=>(const two_way_step&) const = default;
};

namespace detail {
inline std::vector<std::string> default_state_names(std::size_t n) {
	std::vector<std::string> v;
	v.reserve(n);
	for (std::size_t i = 0; i < n; ++i)
		v.push_back("q" + std::to_string(i));
	return v;
}

template <typename T>
void insert_sorted_unique(std::vector<T>& v, const T& x) {
	auto it = std::lower_bound(v.begin(), v.end(), x);
	if (it == v.end() || *it != x)
		v.insert(it, x);
}
} // namespace detail

// Two-way machine ----------------------------------------------------------

class two_way_machine {
public:
	two_way_machine() = default;
	two_way_machine(alphabet sigma, std::vector<std::string> state_names)
		: sigma_(std::move(sigma)), names_(std::move(state_names)),
		  delta_(names_.size() * columns()) {}
	two_way_machine(alphabet sigma, std::size_t num_states)
		: two_way_machine(std::move(sigma), detail::default_state_names(num_states)) {}

	state_id add_state(std::string name) {
		names_.push_back(std::move(name));
		delta_.resize(names_.size() * columns());
		return static_cast<state_id>(names_.size() - 1);
	}

	void add_transition(state_id from, tape_symbol on, state_id to, move dir) {
		detail::insert_sorted_unique(cell(from, on), two_way_step{to, dir});
	}
	void clear_transitions(state_id from, tape_symbol on) { cell(from, on).clear(); }

	void set_initial(state_id q) noexcept { initial_ = q; }
	void add_accepting(state_id q) { detail::insert_sorted_unique(accepting_, q); }
	void remove_accepting(state_id q) {
		accepting_.erase(std::remove(accepting_.begin(), accepting_.end(), q), accepting_.end());
	}
	void set_accept_mode(accept_mode m) noexcept { mode_ = m; }
	void set_start_cell(start_cell c) noexcept { start_ = c; }

	const alphabet& sigma() const noexcept { return sigma_; }
	std::size_t num_states() const noexcept { return names_.size(); }
	const std::string& state_name(state_id q) const { return names_.at(q); }
	const std::vector<std::string>& state_names() const noexcept { return names_; }
	std::optional<state_id> find_state(std::string_view n) const {
		auto it = std::find(names_.begin(), names_.end(), n);
		if (it == names_.end())
			return std::nullopt;
		return static_cast<state_id>(it - names_.begin());
	}
	state_id initial() const noexcept { return initial_; }
	std::span<const state_id> accepting() const noexcept { return accepting_; }
	bool is_accepting(state_id q) const {
		return std::binary_search(accepting_.begin(), accepting_.end(), q);
	}
	accept_mode mode() const noexcept { return mode_; }
	start_cell start() const noexcept { return start_; }

	std::span<const two_way_step> transitions(state_id q, tape_symbol on) const {
		return delta_.at(q * columns() + on.column(sigma_.size()));
	}

	bool is_deterministic() const {
		return std::all_of(delta_.begin(), delta_.end(), [](const auto& v) { return v.size() <= 1; });
	}

	std::size_t num_transitions() const {
		std::size_t n = 0;
		for (const auto& v : delta_)
			n += v.size();
		return n;
	}

	std::size_t columns() const noexcept { return sigma_.size() + 2; }

	bool operator==(const two_way_machine& o) const {
		return sigma_ == o.sigma_ && names_ == o.names_ && initial_ == o.initial_ &&
			accepting_ == o.accepting_ && delta_ == o.delta_ && mode_ == o.mode_ && start_ == o.start_;
	}

private:
	std::vector<two_way_step>& cell(state_id q, tape_symbol on) {
		if (q >= names_.size())
			throw std::out_of_range("state index out of range");
		return delta_[q * columns() + on.column(sigma_.size())];
	}

	alphabet sigma_;
	std::vector<std::string> names_;
	state_id initial_ = 0;
	std::vector<state_id> accepting_;
	std::vector<std::vector<two_way_step>> delta_;
	accept_mode mode_ = accept_mode::anywhere;
	start_cell start_ = start_cell::cell1;
};

// One-way machine ----------------------------------------------------------

class one_way_machine {
public:
	one_way_machine() = default;
	one_way_machine(alphabet sigma, std::vector<std::string> state_names)
		: sigma_(std::move(sigma)), names_(std::move(state_names)),
		  delta_(names_.size() * sigma_.size()) {}
	one_way_machine(alphabet sigma, std::size_t num_states)
		: one_way_machine(std::move(sigma), detail::default_state_names(num_states)) {}

	state_id add_state(std::string name) {
		names_.push_back(std::move(name));
		delta_.resize(names_.size() * sigma_.size());
		return static_cast<state_id>(names_.size() - 1);
	}
	void add_transition(state_id from, symbol_id on, state_id to) {
		if (from >= names_.size() || on >= sigma_.size())
			throw std::out_of_range("transition source out of range");
		detail::insert_sorted_unique(delta_[from * sigma_.size() + on], to);
	}
	void set_initial(state_id q) noexcept { initial_ = q; }
	void add_accepting(state_id q) { detail::insert_sorted_unique(accepting_, q); }

	const alphabet& sigma() const noexcept { return sigma_; }
	std::size_t num_states() const noexcept { return names_.size(); }
	const std::string& state_name(state_id q) const { return names_.at(q); }
	const std::vector<std::string>& state_names() const noexcept { return names_; }
	std::optional<state_id> find_state(std::string_view n) const {
		auto it = std::find(names_.begin(), names_.end(), n);
		if (it == names_.end())
			return std::nullopt;
		return static_cast<state_id>(it - names_.begin());
	}
	state_id initial() const noexcept { return initial_; }
	std::span<const state_id> accepting() const noexcept { return accepting_; }
	bool is_accepting(state_id q) const {
		return std::binary_search(accepting_.begin(), accepting_.end(), q);
	}
	std::span<const state_id> successors(state_id q, symbol_id a) const {
		return delta_.at(q * sigma_.size() + a);
	}

	// Every image has at most one element.
	bool is_deterministic() const {
		return std::all_of(delta_.begin(), delta_.end(), [](const auto& v) { return v.size() <= 1; });
	}
	bool is_complete() const {
		return std::all_of(delta_.begin(), delta_.end(), [](const auto& v) { return v.size() == 1; });
	}

	bool operator==(const one_way_machine& o) const {
		return sigma_ == o.sigma_ && names_ == o.names_ && initial_ == o.initial_ &&
			accepting_ == o.accepting_ && delta_ == o.delta_;
	}

private:
	alphabet sigma_;
	std::vector<std::string> names_;
	state_id initial_ = 0;
	std::vector<state_id> accepting_;
	std::vector<std::vector<state_id>> delta_;
};

using any_machine = std::variant<one_way_machine, two_way_machine>;

inline const alphabet& sigma_of(const any_machine& m) {
	return std::visit([](const auto& x) -> const alphabet& { return x.sigma(); }, m);
}
inline std::size_t num_states_of(const any_machine& m) {
	return std::visit([](const auto& x) { return x.num_states(); }, m);
}

// Configurations and trajectories ------------------------------------------

struct configuration {
	state_id state;
	std::size_t position;
	bool operator==(const configuration&) const = default;
};

enum class verdict : std::uint8_t { accept, reject, loop };

struct trajectory {
	std::vector<configuration> steps;
	// moves[i] takes steps[i] to steps[i+1]
	std::vector<move> moves;
	verdict result = verdict::reject;
};

inline tape_symbol tape_at(std::span<const symbol_id> w, std::size_t pos) {
	if (pos == 0)
		return tape_symbol::left_end();
	if (pos == w.size() + 1)
		return tape_symbol::right_end();
	return tape_symbol::of(w[pos - 1]);
}

inline std::size_t start_position(const two_way_machine& m) {
	return m.start() == start_cell::cell0 ? 0 : 1;
}

inline bool accepts_at(const two_way_machine& m, state_id q, std::size_t pos, std::size_t len) {
	if (!m.is_accepting(q))
		return false;
	switch (m.mode()) {
	case accept_mode::anywhere: return true;
	case accept_mode::on_right_end: return pos == len + 1;
	case accept_mode::on_left_end: return pos == 0;
	}
	return false;
}

inline std::size_t apply_move(std::size_t pos, move d, std::size_t len) {
	switch (d) {
	case move::left:
		if (pos == 0)
			throw invalid_machine("move off the left endmarker");
		return pos - 1;
	case move::right:
		if (pos == len + 1)
			throw invalid_machine("move off the right endmarker");
		return pos + 1;
	case move::stay: return pos;
	case move::wrap:
		if (pos != len + 1)
			throw invalid_machine("wrap move away from the right endmarker");
		return 1;
	}
	return pos;
}

// Validation ---------------------------------------------------------------

inline std::string describe(const two_way_machine& m, state_id q, tape_symbol on) {
	std::string sym = on.type() == tape_symbol::kind::left_end ? "|-"
		: on.type() == tape_symbol::kind::right_end           ? "-|"
		                                                      : m.sigma().name(on.symbol());
	return "(" + m.state_name(q) + ", " + sym + ")";
}

inline std::vector<std::string> validate(const two_way_machine& m) {
	std::vector<std::string> out;
	const auto& names = m.sigma().names();
	for (std::size_t i = 0; i < names.size(); ++i) {
		if (!is_valid_token(names[i]))
			out.push_back("invalid symbol name '" + names[i] + "'");
		for (std::size_t j = 0; j < i; ++j)
			if (names[i] == names[j])
				out.push_back("duplicate symbol name '" + names[i] + "'");
	}
	const auto n = m.num_states();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < i; ++j)
			if (m.state_name(i) == m.state_name(j))
				out.push_back("duplicate state name '" + m.state_name(i) + "'");
	if (n == 0)
		out.push_back("machine has no states");
	if (m.initial() >= n)
		out.push_back("initial state index " + std::to_string(m.initial()) + " is unknown");
	for (state_id q : m.accepting())
		if (q >= n)
			out.push_back("accepting state index " + std::to_string(q) + " is unknown");
	for (state_id q = 0; q < n; ++q) {
		for (std::size_t col = 0; col < m.columns(); ++col) {
			auto on = tape_symbol::from_column(col, m.sigma().size());
			for (const auto& st : m.transitions(q, on)) {
				if (st.target >= n)
					out.push_back("transition " + describe(m, q, on) + " targets unknown state index " +
						std::to_string(st.target));
				if (on.type() == tape_symbol::kind::left_end && st.dir == move::left)
					out.push_back("transition " + describe(m, q, on) + " moves off left endmarker");
				if (on.type() == tape_symbol::kind::right_end && st.dir == move::right)
					out.push_back("transition " + describe(m, q, on) + " moves off right endmarker");
				if (on.type() != tape_symbol::kind::right_end && st.dir == move::wrap)
					out.push_back("transition " + describe(m, q, on) + " wraps away from right endmarker");
			}
		}
	}
	return out;
}

inline std::vector<std::string> validate(const one_way_machine& m) {
	std::vector<std::string> out;
	const auto n = m.num_states();
	if (n == 0)
		out.push_back("machine has no states");
	if (m.initial() >= n)
		out.push_back("initial state index " + std::to_string(m.initial()) + " is unknown");
	for (state_id q : m.accepting())
		if (q >= n)
			out.push_back("accepting state index " + std::to_string(q) + " is unknown");
	for (state_id q = 0; q < n; ++q)
		for (symbol_id a = 0; a < m.sigma().size(); ++a)
			for (state_id t : m.successors(q, a))
				if (t >= n)
					out.push_back("transition (" + m.state_name(q) + ", " + m.sigma().name(a) +
						") targets unknown state index " + std::to_string(t));
	return out;
}

// Simulation ---------------------------------------------------------------

// Runs a deterministic machine. A run that survives |Q|*(|w|+2) steps has
// repeated a configuration and is reported as a loop.
inline trajectory run_deterministic(const two_way_machine& m, std::span<const symbol_id> w) {
	if (!m.is_deterministic())
		throw nondeterministic_machine();
	const std::size_t len = w.size();
	const std::size_t limit = m.num_states() * (len + 2);
	trajectory t;
	state_id q = m.initial();
	std::size_t pos = start_position(m);
	t.steps.push_back({q, pos});
	for (;;) {
		if (accepts_at(m, q, pos, len)) {
			t.result = verdict::accept;
			return t;
		}
		auto tr = m.transitions(q, tape_at(w, pos));
		if (tr.empty()) {
			t.result = verdict::reject;
			return t;
		}
		pos = apply_move(pos, tr[0].dir, len);
		q = tr[0].target;
		t.moves.push_back(tr[0].dir);
		t.steps.push_back({q, pos});
		if (t.steps.size() > limit) {
			t.result = verdict::loop;
			return t;
		}
	}
}

// Reachability over the configuration graph Q x [0, |w|+1].
inline bool accepts_nondeterministic(const two_way_machine& m, std::span<const symbol_id> w) {
	const std::size_t len = w.size();
	const std::size_t cells = len + 2;
	std::vector<char> seen(m.num_states() * cells, 0);
	std::vector<configuration> stack;
	auto push = [&](state_id q, std::size_t pos) {
		auto& s = seen[q * cells + pos];
		if (!s) {
			s = 1;
			stack.push_back({q, pos});
		}
	};
	push(m.initial(), start_position(m));
	while (!stack.empty()) {
		auto c = stack.back();
		stack.pop_back();
		if (accepts_at(m, c.state, c.position, len))
			return true;
		for (const auto& st : m.transitions(c.state, tape_at(w, c.position)))
			push(st.target, apply_move(c.position, st.dir, len));
	}
	return false;
}

struct oneway_run {
	std::vector<state_id> end_states;
	bool accepted = false;
};

inline oneway_run run_oneway(const one_way_machine& m, std::span<const symbol_id> w) {
	std::vector<char> cur(m.num_states(), 0), next(m.num_states(), 0);
	cur[m.initial()] = 1;
	for (symbol_id a : w) {
		std::fill(next.begin(), next.end(), 0);
		for (state_id q = 0; q < m.num_states(); ++q)
			if (cur[q])
				for (state_id t : m.successors(q, a))
					next[t] = 1;
		cur.swap(next);
	}
	oneway_run r;
	for (state_id q = 0; q < m.num_states(); ++q)
		if (cur[q]) {
			r.end_states.push_back(q);
			r.accepted = r.accepted || m.is_accepting(q);
		}
	return r;
}

inline bool accepts(const two_way_machine& m, std::span<const symbol_id> w) {
	if (m.is_deterministic())
		return run_deterministic(m, w).result == verdict::accept;
	return accepts_nondeterministic(m, w);
}
inline bool accepts(const one_way_machine& m, std::span<const symbol_id> w) {
	return run_oneway(m, w).accepted;
}
inline bool accepts(const any_machine& m, std::span<const symbol_id> w) {
	return std::visit([&](const auto& x) { return accepts(x, w); }, m);
}

// One-way machine viewed as a two-way machine that only moves right and
// accepts on the right endmarker.
inline two_way_machine embed(const one_way_machine& m) {
	two_way_machine out(m.sigma(), m.state_names());
	out.set_initial(m.initial());
	for (state_id q : m.accepting())
		out.add_accepting(q);
	out.set_accept_mode(accept_mode::on_right_end);
	out.set_start_cell(start_cell::cell1);
	for (state_id q = 0; q < m.num_states(); ++q)
		for (symbol_id a = 0; a < m.sigma().size(); ++a)
			for (state_id t : m.successors(q, a))
				out.add_transition(q, tape_symbol::of(a), t, move::right);
	return out;
}

inline two_way_machine as_two_way(const any_machine& m) {
	if (auto p = std::get_if<one_way_machine>(&m))
		return embed(*p);
	return std::get<two_way_machine>(m);
}

// Acceptance-mode conversion -----------------------------------------------

namespace detail {
inline std::string fresh_name(const two_way_machine& m, const std::string& base) {
	std::string n = base;
	for (int i = 1; m.find_state(n); ++i)
		n = base + "_" + std::to_string(i);
	return n;
}
} // namespace detail

// Same language, acceptance "reach a final state anywhere". Adds at most one state.
inline two_way_machine to_anywhere_acceptance(const two_way_machine& m) {
	if (m.mode() == accept_mode::anywhere)
		return m;
	two_way_machine out = m;
	const auto end = m.mode() == accept_mode::on_right_end ? tape_symbol::right_end() : tape_symbol::left_end();
	const state_id acc = out.add_state(detail::fresh_name(m, "acc"));
	std::vector<state_id> old(m.accepting().begin(), m.accepting().end());
	for (state_id q : old) {
		if (q >= m.num_states())
			continue;
		out.remove_accepting(q);
		out.clear_transitions(q, end);
		out.add_transition(q, end, acc, move::stay);
	}
	out.add_accepting(acc);
	out.set_accept_mode(accept_mode::anywhere);
	return out;
}

// Same language under `target` acceptance; adds at most one state in total.
inline two_way_machine with_accept_mode(const two_way_machine& m, accept_mode target) {
	if (m.mode() == target)
		return m;
	two_way_machine out = to_anywhere_acceptance(m);
	if (target == accept_mode::anywhere)
		return out;
	const bool right = target == accept_mode::on_right_end;
	const auto end = right ? tape_symbol::right_end() : tape_symbol::left_end();
	const move toward = right ? move::right : move::left;
	std::vector<state_id> acc(out.accepting().begin(), out.accepting().end());
	for (state_id q : acc) {
		for (std::size_t col = 0; col < out.columns(); ++col)
			out.clear_transitions(q, tape_symbol::from_column(col, out.sigma().size()));
		for (std::size_t col = 0; col < out.columns(); ++col) {
			auto on = tape_symbol::from_column(col, out.sigma().size());
			if (on != end)
				out.add_transition(q, on, q, toward);
		}
	}
	out.set_accept_mode(target);
	return out;
}

// Word enumeration ---------------------------------------------------------

// Calls f(word) for every word of length exactly `len` in lexicographic order
// of symbol ids. Stops early when f returns false.
template <typename F>
bool for_each_word_of_length(std::size_t alphabet_size, std::size_t len, F&& f) {
	word w(len, 0);
	if (alphabet_size == 0)
		return len == 0 ? static_cast<bool>(f(std::as_const(w))) : true;
	for (;;) {
		if (!f(std::as_const(w)))
			return false;
		std::size_t i = len;
		while (i > 0) {
			--i;
			if (++w[i] < alphabet_size)
				break;
			w[i] = 0;
			if (i == 0)
				return true;
		}
		if (len == 0)
			return true;
	}
}

// Shortlex enumeration of all words of length <= max_len.
template <typename F>
bool for_each_word(std::size_t alphabet_size, std::size_t max_len, F&& f) {
	for (std::size_t len = 0; len <= max_len; ++len)
		if (!for_each_word_of_length(alphabet_size, len, f))
			return false;
	return true;
}

} // namespace twfa

#endif
