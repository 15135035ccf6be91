// families.hpp -- witness automata for I_n and L_n
//
//   I_n = (a+b)* a (a+b)^{n-1}               n-th symbol from the right is a
//   L_n = (a+b)* a (a+b)^{n-1} a (a+b)*      two a's exactly n positions apart
//
// All machines share the alphabet "b a" (b is symbol 0), so shortlex order
// lists b before a. Two-way machines accept anywhere and start on cell 1
// unless stated otherwise.
#ifndef TWFA_FAMILIES_HPP
#define TWFA_FAMILIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace twfa {

struct unsupported_combination : error {
	using error::error;
};

enum class family : std::uint8_t { I, L };

enum class variant : std::uint8_t {
	one_way_nfa,
	one_way_dfa_minimal,
	two_way_one_reversal,
	two_way_naive,
	two_way_improved,
	sweeping_quadratic,
	sweeping_linear,
	rotating,
	outer_nondet,
};

inline constexpr variant all_variants[] = {variant::one_way_nfa, variant::one_way_dfa_minimal,
	variant::two_way_one_reversal, variant::two_way_naive, variant::two_way_improved, variant::sweeping_quadratic,
	variant::sweeping_linear, variant::rotating, variant::outer_nondet};

inline const char* variant_name(variant v) {
	switch (v) {
	case variant::one_way_nfa: return "one-way-nfa";
	case variant::one_way_dfa_minimal: return "one-way-dfa-minimal";
	case variant::two_way_one_reversal: return "two-way-one-reversal";
	case variant::two_way_naive: return "two-way-naive";
	case variant::two_way_improved: return "two-way-improved";
	case variant::sweeping_quadratic: return "sweeping-quadratic";
	case variant::sweeping_linear: return "sweeping-linear";
	case variant::rotating: return "rotating";
	case variant::outer_nondet: return "outer-nondet";
	}
	return "?";
}

inline std::optional<variant> parse_variant(std::string_view s) {
	for (variant v : all_variants)
		if (s == variant_name(v))
			return v;
	return std::nullopt;
}

inline const char* family_name(family f) { return f == family::I ? "I" : "L"; }

inline std::optional<family> parse_family(std::string_view s) {
	if (s == "I")
		return family::I;
	if (s == "L")
		return family::L;
	return std::nullopt;
}

struct family_spec {
	family fam = family::L;
	unsigned n = 1;
	variant var = variant::one_way_nfa;
};

inline bool supported(family f, variant v) {
	switch (v) {
	case variant::one_way_nfa:
	case variant::one_way_dfa_minimal:
	case variant::rotating: return true;
	case variant::two_way_one_reversal: return f == family::I;
	default: return f == family::L;
	}
}

struct generated_machine {
	any_machine machine;
	std::size_t state_bound = 0;
	std::string bound_formula;
};

inline alphabet families_alphabet() { return alphabet({"b", "a"}); }

inline constexpr symbol_id sym_b = 0;
inline constexpr symbol_id sym_a = 1;

// Positional definition, no automata involved. `w` is a string over {a, b}.
inline bool membership_oracle(family f, unsigned n, std::string_view w) {
	if (n == 0)
		throw std::invalid_argument("n must be positive");
	for (char c : w)
		if (c != 'a' && c != 'b')
			throw std::invalid_argument("membership_oracle: word must be over {a, b}");
	if (f == family::I)
		return w.size() >= n && w[w.size() - n] == 'a';
	for (std::size_t i = 0; i + n < w.size(); ++i)
		if (w[i] == 'a' && w[i + n] == 'a')
			return true;
	return false;
}

inline bool membership_oracle(family f, unsigned n, std::span<const symbol_id> w) {
	std::string s;
	for (symbol_id x : w)
		s += x == sym_a ? 'a' : 'b';
	return membership_oracle(f, n, s);
}

namespace detail {

// Small helper to build two-way machines by state name.
class two_way_builder {
public:
	explicit two_way_builder(alphabet sigma) : m_(std::move(sigma), std::vector<std::string>{}) {}

	state_id state(const std::string& name) {
		if (auto q = m_.find_state(name))
			return *q;
		return m_.add_state(name);
	}
	void on(state_id q, tape_symbol t, state_id to, move d) { m_.add_transition(q, t, to, d); }
	void on_real(state_id q, symbol_id a, state_id to, move d) { on(q, tape_symbol::of(a), to, d); }
	void on_all_real(state_id q, state_id to, move d) {
		for (symbol_id a = 0; a < m_.sigma().size(); ++a)
			on_real(q, a, to, d);
	}
	two_way_machine& machine() { return m_; }

private:
	two_way_machine m_;
};

inline std::string cat(std::initializer_list<std::string> parts) {
	std::string s;
	for (const auto& p : parts)
		s += p;
	return s;
}

inline std::string num(std::size_t v) { return std::to_string(v); }

inline unsigned mod(long long x, unsigned n) { return static_cast<unsigned>(((x % n) + n) % n); }

inline std::string window_name(unsigned bits, unsigned n) {
	// bit n-1 is the oldest symbol; 1 = a
	std::string s;
	for (unsigned i = n; i-- > 0;)
		s += (bits >> i) & 1 ? 'a' : 'b';
	return s;
}

inline one_way_machine nfa_I(unsigned n) {
	one_way_machine m(families_alphabet(), 0);
	for (unsigned i = 0; i <= n; ++i)
		m.add_state("q" + num(i));
	m.set_initial(0);
	m.add_transition(0, sym_a, 0);
	m.add_transition(0, sym_b, 0);
	m.add_transition(0, sym_a, 1);
	for (unsigned i = 1; i < n; ++i) {
		m.add_transition(i, sym_a, i + 1);
		m.add_transition(i, sym_b, i + 1);
	}
	m.add_accepting(n);
	return m;
}

inline one_way_machine nfa_L(unsigned n) {
	one_way_machine m(families_alphabet(), 0);
	for (unsigned i = 0; i <= n; ++i)
		m.add_state("q" + num(i));
	const state_id f = m.add_state("qf");
	m.set_initial(0);
	m.add_transition(0, sym_a, 0);
	m.add_transition(0, sym_b, 0);
	m.add_transition(0, sym_a, 1);
	for (unsigned i = 1; i < n; ++i) {
		m.add_transition(i, sym_a, i + 1);
		m.add_transition(i, sym_b, i + 1);
	}
	m.add_transition(n, sym_a, f);
	m.add_transition(f, sym_a, f);
	m.add_transition(f, sym_b, f);
	m.add_accepting(f);
	return m;
}

// Window DFAs: the state is the last n symbols read, padded with b.
inline one_way_machine dfa_I(unsigned n) {
	const unsigned size = 1u << n, top = 1u << (n - 1);
	one_way_machine m(families_alphabet(), 0);
	for (unsigned w = 0; w < size; ++w)
		m.add_state(window_name(w, n));
	m.set_initial(0);
	for (unsigned w = 0; w < size; ++w) {
		if (w & top)
			m.add_accepting(w);
		m.add_transition(w, sym_b, (w << 1) & (size - 1));
		m.add_transition(w, sym_a, ((w << 1) | 1) & (size - 1));
	}
	return m;
}

inline one_way_machine dfa_L(unsigned n) {
	const unsigned size = 1u << n, top = 1u << (n - 1);
	one_way_machine m(families_alphabet(), 0);
	for (unsigned w = 0; w < size; ++w)
		m.add_state(window_name(w, n));
	const state_id f = m.add_state("final");
	m.set_initial(0);
	m.add_accepting(f);
	for (unsigned w = 0; w < size; ++w) {
		m.add_transition(w, sym_b, (w << 1) & (size - 1));
		m.add_transition(w, sym_a, (w & top) ? f : ((w << 1) | 1) & (size - 1));
	}
	m.add_transition(f, sym_a, f);
	m.add_transition(f, sym_b, f);
	return m;
}

// Scan to -|, then walk back n cells and inspect. One reversal.
inline two_way_machine one_reversal_I(unsigned n) {
	two_way_builder b(families_alphabet());
	const state_id s = b.state("s");
	std::vector<state_id> c;
	for (unsigned k = 1; k <= n; ++k)
		c.push_back(b.state("c" + num(k)));
	const state_id acc = b.state("acc");
	b.on_all_real(s, s, move::right);
	b.on(s, tape_symbol::right_end(), c[0], move::left);
	for (unsigned k = 0; k + 1 < n; ++k)
		b.on_all_real(c[k], c[k + 1], move::left);
	b.on_real(c[n - 1], sym_a, acc, move::stay);
	b.machine().add_accepting(acc);
	return b.machine();
}

// For every start cell i: walk to i+n, remember whether w_i = w_{i+n} = a,
// walk back to i+1. The verdict is only given at -|, so the head trajectory
// depends on |w| alone.
inline two_way_machine naive_L(unsigned n) {
	two_way_builder b(families_alphabet());
	auto flag = [](bool f) { return num(f); };
	auto start = [&](bool f) { return b.state("start_" + flag(f)); };
	auto fwd = [&](unsigned k, bool x, bool f) { return b.state(cat({"fwd", num(k), "_", flag(x), "_", flag(f)})); };
	auto bwd = [&](unsigned r, bool f) { return b.state(cat({"bwd", num(r), "_", flag(f)})); };
	start(false);
	const state_id acc = b.state("acc");
	const state_id rej = b.state("rej");
	auto finish = [&](state_id q, bool f) { b.on(q, tape_symbol::right_end(), f ? acc : rej, move::stay); };
	for (bool f : {false, true}) {
		const state_id st = start(f);
		b.on_real(st, sym_a, fwd(1, true, f), move::right);
		b.on_real(st, sym_b, fwd(1, false, f), move::right);
		finish(st, f);
		for (unsigned k = 1; k <= n; ++k)
			for (bool x : {false, true}) {
				const state_id q = fwd(k, x, f);
				finish(q, f);
				if (k < n) {
					b.on_all_real(q, fwd(k + 1, x, f), move::right);
					continue;
				}
				for (symbol_id a : {sym_b, sym_a}) {
					const bool g = f || (x && a == sym_a);
					if (n == 1)
						b.on_real(q, a, start(g), move::stay);
					else if (n == 2)
						b.on_real(q, a, start(g), move::left);
					else
						b.on_real(q, a, bwd(n - 2, g), move::left);
				}
			}
		for (unsigned r = n >= 2 ? n - 2 : 0; r >= 1; --r)
			b.on_all_real(bwd(r, f), r == 1 ? start(f) : bwd(r - 1, f), move::left);
	}
	b.machine().add_accepting(acc);
	return b.machine();
}

// Skip b's; from an a walk n cells right, accept on a, otherwise walk back
// n-1 cells and keep scanning.
inline two_way_machine improved_L(unsigned n) {
	two_way_builder b(families_alphabet());
	const state_id scan = b.state("scan");
	std::vector<state_id> fwd;
	for (unsigned k = 1; k <= n; ++k)
		fwd.push_back(b.state("fwd" + num(k)));
	std::vector<state_id> bwd(n >= 2 ? n - 1 : 0);
	for (unsigned r = 1; r + 2 <= n; ++r)
		bwd[r] = b.state("bwd" + num(r));
	const state_id acc = b.state("acc");
	b.on_real(scan, sym_b, scan, move::right);
	b.on_real(scan, sym_a, fwd[0], move::right);
	for (unsigned k = 1; k < n; ++k)
		b.on_all_real(fwd[k - 1], fwd[k], move::right);
	b.on_real(fwd[n - 1], sym_a, acc, move::stay);
	if (n == 1)
		b.on_real(fwd[n - 1], sym_b, scan, move::stay);
	else if (n == 2)
		b.on_real(fwd[n - 1], sym_b, scan, move::left);
	else
		b.on_real(fwd[n - 1], sym_b, bwd[n - 2], move::left);
	for (unsigned r = 1; r + 2 <= n; ++r)
		b.on_all_real(bwd[r], r == 1 ? scan : bwd[r - 1], move::left);
	b.machine().add_accepting(acc);
	return b.machine();
}

// Left-to-right pass that checks the pairs (j, j+n) with j = r (mod n).
// State R(c, p): c = (position - r) mod n, p = the last inspected cell held a.
// `prefix` names the states; `next` is called at -|.
inline void residue_pass(two_way_builder& b, unsigned n, const std::string& prefix, state_id acc,
	const std::function<void(state_id, unsigned)>& at_right_end) {
	for (unsigned c = 0; c < n; ++c)
		for (bool p : {false, true}) {
			const state_id q = b.state(cat({prefix, num(c), "_", num(p)}));
			const state_id next_false = b.state(cat({prefix, num((c + 1) % n), "_0"}));
			const state_id next_keep = b.state(cat({prefix, num((c + 1) % n), "_", num(p)}));
			if (c == 0) {
				b.on_real(q, sym_a, p ? acc : b.state(cat({prefix, num(1 % n), "_1"})), p ? move::stay : move::right);
				b.on_real(q, sym_b, next_false, move::right);
			} else {
				b.on_all_real(q, next_keep, move::right);
			}
			at_right_end(q, c);
		}
}

// Sweep i (1..n) checks residue i; the sweep index lives in the state.
inline two_way_machine sweeping_quadratic_L(unsigned n) {
	two_way_builder b(families_alphabet());
	auto R = [&](unsigned i) { return "R" + num(i) + "_"; };
	b.state(R(1) + "0_0");
	const state_id acc = b.state("acc");
	for (unsigned i = 1; i <= n; ++i) {
		residue_pass(b, n, R(i), acc, [&](state_id q, unsigned) {
			if (i < n)
				b.on(q, tape_symbol::right_end(), b.state("Lsw" + num(i + 1)), move::left);
		});
	}
	for (unsigned i = 2; i <= n; ++i) {
		const state_id l = b.state("Lsw" + num(i));
		b.on_all_real(l, l, move::left);
		b.on(l, tape_symbol::left_end(), b.state(R(i) + num(mod(1 - static_cast<long long>(i), n)) + "_0"),
			move::right);
	}
	b.machine().add_accepting(acc);
	return b.machine();
}

// One residue pass per sweep, but the sweep index is not stored: the left
// sweep counts its position modulo n, which yields the starting counter of
// the next pass; the count reaches 0 at |- exactly after the n-th pass.
inline two_way_machine sweeping_linear_L(unsigned n) {
	two_way_builder b(families_alphabet());
	b.state("R0_0");
	const state_id acc = b.state("acc");
	residue_pass(b, n, "R", acc, [&](state_id q, unsigned c) {
		b.on(q, tape_symbol::right_end(), b.state("Lsw" + num(mod(static_cast<long long>(c) - 1, n))), move::left);
	});
	for (unsigned d = 0; d < n; ++d) {
		const state_id l = b.state("Lsw" + num(d));
		b.on_all_real(l, b.state("Lsw" + num(mod(static_cast<long long>(d) - 1, n))), move::left);
		if (d != 0)
			b.on(l, tape_symbol::left_end(), b.state("R" + num(d) + "_0"), move::right);
	}
	b.machine().add_accepting(acc);
	return b.machine();
}

// Residue passes separated by counting rotations instead of left sweeps.
inline two_way_machine rotating_L(unsigned n) {
	two_way_builder b(families_alphabet());
	b.state("A0_0");
	const state_id acc = b.state("acc");
	residue_pass(b, n, "A", acc, [&](state_id q, unsigned c) {
		b.on(q, tape_symbol::right_end(), b.state("B" + num(mod(static_cast<long long>(c) - 1, n))), move::wrap);
	});
	for (unsigned d = 0; d < n; ++d) {
		const state_id q = b.state("B" + num(d));
		b.on_all_real(q, b.state("B" + num(mod(static_cast<long long>(d) - 1, n))), move::right);
		if (d != 0)
			b.on(q, tape_symbol::right_end(), b.state("A" + num(d) + "_0"), move::wrap);
	}
	b.machine().add_accepting(acc);
	return b.machine();
}

// First rotation measures |w| + 1 mod n; the second remembers the symbol at
// the last cell congruent to |w| + 1 - n, which is that cell itself.
inline two_way_machine rotating_I(unsigned n) {
	two_way_builder b(families_alphabet());
	auto r1 = [&](unsigned c) { return b.state("C" + num(c)); };
	auto r2 = [&](unsigned e, bool last) { return b.state(cat({"D", num(e), "_", num(last)})); };
	r1(1 % n);
	const state_id acc = b.state("acc");
	for (unsigned c = 0; c < n; ++c) {
		b.on_all_real(r1(c), r1((c + 1) % n), move::right);
		b.on(r1(c), tape_symbol::right_end(), r2(mod(1 - static_cast<long long>(c), n), false), move::wrap);
	}
	for (unsigned e = 0; e < n; ++e)
		for (bool last : {false, true}) {
			const state_id q = r2(e, last);
			if (e == 0) {
				b.on_real(q, sym_a, r2(1 % n, true), move::right);
				b.on_real(q, sym_b, r2(1 % n, false), move::right);
			} else {
				b.on_all_real(q, r2((e + 1) % n, last), move::right);
			}
			if (last)
				b.on(q, tape_symbol::right_end(), acc, move::stay);
		}
	b.machine().add_accepting(acc);
	return b.machine();
}

// Guesses the residue on |-, then a single deterministic pass.
inline two_way_machine outer_nondet_L(unsigned n) {
	two_way_builder b(families_alphabet());
	const state_id start = b.state("start");
	const state_id acc = b.state("acc");
	residue_pass(b, n, "R", acc, [](state_id, unsigned) {});
	for (unsigned c = 0; c < n; ++c)
		b.on(start, tape_symbol::left_end(), b.state("R" + num(c) + "_0"), move::right);
	b.machine().add_accepting(acc);
	b.machine().set_start_cell(start_cell::cell0);
	return b.machine();
}

} // namespace detail

inline generated_machine generate(const family_spec& spec) {
	const unsigned n = spec.n;
	if (n == 0)
		throw std::invalid_argument("n must be positive");
	if (!supported(spec.fam, spec.var))
		throw unsupported_combination(std::string("variant ") + variant_name(spec.var) + " is not defined for family " +
			family_name(spec.fam));
	const bool I = spec.fam == family::I;
	auto pow2 = [&] {
		if (n > 24)
			throw std::invalid_argument("n too large for an explicit window DFA");
		return std::size_t{1} << n;
	};
	switch (spec.var) {
	case variant::one_way_nfa:
		if (I)
			return {detail::nfa_I(n), n + 1, "n+1"};
		return {detail::nfa_L(n), n + 2, "n+2"};
	case variant::one_way_dfa_minimal:
		if (I)
			return {detail::dfa_I(n), pow2(), "2^n"};
		return {detail::dfa_L(n), pow2() + 1, "2^n+1"};
	case variant::two_way_one_reversal: return {detail::one_reversal_I(n), n + 2, "n+2"};
	case variant::two_way_naive: return {detail::naive_L(n), 6 * n + 4, "6n+4"};
	case variant::two_way_improved: return {detail::improved_L(n), 2 * n + 2, "2n+2"};
	case variant::sweeping_quadratic: return {detail::sweeping_quadratic_L(n), 3 * n * n, "3n^2"};
	case variant::sweeping_linear: return {detail::sweeping_linear_L(n), 4 * n, "4n"};
	case variant::rotating:
		if (I)
			return {detail::rotating_I(n), 4 * n, "4n"};
		return {detail::rotating_L(n), 4 * n, "4n"};
	case variant::outer_nondet: return {detail::outer_nondet_L(n), 4 * n, "4n"};
	}
	throw unsupported_combination("unknown variant");
}

} // namespace twfa

#endif
