// cli.hpp -- the `twfa` command-line front end
//
// Exit status: 0 accept / holds / equivalent, 1 reject / fails / inequivalent,
// 2 usage or input error. On status 2 nothing is written to the result stream.
#ifndef TWFA_CLI_HPP
#define TWFA_CLI_HPP

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analysis.hpp"
#include "core.hpp"
#include "families.hpp"
#include "report.hpp"
#include "text_format.hpp"
#include "transform.hpp"
#include "unary_gap.hpp"

namespace twfa::cli {

struct usage_error : error {
	using error::error;
};

namespace detail {

inline std::string quote(const alphabet& sigma, std::span<const symbol_id> w) {
	return "'" + sigma.format_word(w) + "'";
}

inline void write_or_print(const std::string& text, const std::string& path, std::ostream& out) {
	if (path.empty()) {
		out << text;
		return;
	}
	std::ofstream f(path);
	if (!f)
		throw error("cannot write '" + path + "'");
	f << text;
	if (!f)
		throw error("error writing '" + path + "'");
}

inline digraph load_graph(const std::string& path) {
	std::ifstream in(path);
	if (!in)
		throw error("cannot open '" + path + "'");
	return parse_graph(in);
}

inline std::string format_count(const run_count& c) {
	switch (c.type) {
	case run_count::kind::finite: return std::to_string(c.value);
	case run_count::kind::at_least: return "at least " + std::to_string(c.value);
	case run_count::kind::infinite: return "infinitely many";
	}
	return "?";
}

inline two_way_machine require_two_way(const any_machine& m, const char* what) {
	if (auto t = std::get_if<two_way_machine>(&m))
		return *t;
	throw usage_error(std::string(what) + " needs a two-way machine");
}

inline one_way_machine one_way_dfa_of(const any_machine& m) {
	if (auto p = std::get_if<one_way_machine>(&m))
		return determinize(*p);
	const auto& t = std::get<two_way_machine>(m);
	if (!t.is_deterministic())
		throw nondeterministic_machine();
	bool wraps = false;
	for (state_id q = 0; q < t.num_states(); ++q)
		for (const auto& st : t.transitions(q, tape_symbol::right_end()))
			wraps = wraps || st.dir == move::wrap;
	return shepherdson(wraps ? rotating_to_sweeping(t) : t);
}

// Acceptance of a^m by a unary one-way machine through its Chrobak form.
inline bool chrobak_accepts(const chrobak_form& f, const unary_length& m) {
	if (m < f.tail.size())
		return f.tail[static_cast<std::size_t>(m)];
	const unary_length off = m - f.tail.size();
	for (const auto& c : f.cycles)
		if (c[static_cast<std::size_t>(off % c.size())])
			return true;
	return false;
}

inline constexpr std::uint64_t literal_tape_limit = 1'000'000;

inline bool accepts_length(const any_machine& machine, const unary_length& m) {
	if (sigma_of(machine).size() != 1)
		throw usage_error("--unary-length needs a machine over a one-letter alphabet");
	if (auto p = std::get_if<one_way_machine>(&machine))
		return chrobak_accepts(chrobak_normal_form(*p), m);
	const auto& t = std::get<two_way_machine>(machine);
	try {
		if (t.start() == start_cell::cell0)
			return accepts_unary(t, m);
	} catch (const not_quasi_sweeping&) {
		if (m > literal_tape_limit)
			throw;
	}
	if (m > literal_tape_limit)
		throw usage_error("machine does not start on |-; length-only simulation unavailable for m > " +
			std::to_string(literal_tape_limit));
	return accepts(t, word(static_cast<std::size_t>(m), 0));
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
	CLI::App app{"Two-way finite automata toolkit", "twfa"};
	app.require_subcommand(1);
	app.set_help_all_flag("--help-all", "Expand all help");

	// gen
	auto* gen = app.add_subcommand("gen", "Generate a witness automaton for I_n or L_n");
	std::string gen_family, gen_variant, gen_out;
	unsigned gen_n = 0;
	gen->add_option("--family", gen_family, "I or L")->required();
	gen->add_option("--n", gen_n, "Parameter n >= 1")->required();
	gen->add_option("--variant", gen_variant, "Construction")->required();
	gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

	// run
	auto* runc = app.add_subcommand("run", "Run a machine on one input");
	std::string run_machine, run_input, run_length;
	bool run_trace = false;
	runc->add_option("--machine", run_machine, "Automaton file")->required();
	auto* in_opt = runc->add_option("--input", run_input, "Input word");
	auto* len_opt = runc->add_option("--unary-length", run_length, "Length m of a^m (decimal, unbounded)");
	in_opt->excludes(len_opt);
	runc->add_flag("--trace", run_trace, "Print the configuration sequence (deterministic two-way only)");

	// convert
	auto* conv = app.add_subcommand("convert", "Convert a machine");
	std::string conv_machine, conv_to, conv_out;
	conv->add_option("--machine", conv_machine, "Automaton file")->required();
	conv->add_option("--to", conv_to, "dfa|min|shepherdson|sweeping|chrobak|left-end|right-end|anywhere")
		->required()
		->check(CLI::IsMember({"dfa", "min", "shepherdson", "sweeping", "chrobak", "left-end", "right-end", "anywhere"}));
	conv->add_option("-o,--output", conv_out, "Output file (default stdout)");

	// analyze
	auto* ana = app.add_subcommand("analyze", "Classify a machine");
	std::string ana_machine, ana_check;
	std::size_t ana_max_len = 8;
	ana->add_option("machine", ana_machine, "Automaton file")->required();
	ana->add_option("--check", ana_check, "validate|reversals|oblivious|sweeping|rotating|outer-nondet|ambiguity")
		->required()
		->check(CLI::IsMember({"validate", "reversals", "oblivious", "sweeping", "rotating", "outer-nondet", "ambiguity"}));
	ana->add_option("--max-len", ana_max_len, "Longest input examined by behavioral checks");

	// equiv
	auto* eq = app.add_subcommand("equiv", "Compare two machines");
	std::string eq_a, eq_b;
	std::size_t eq_max_len = 0;
	bool eq_exact = false;
	eq->add_option("first", eq_a, "Automaton file")->required();
	eq->add_option("second", eq_b, "Automaton file")->required();
	auto* ml = eq->add_option("--max-len", eq_max_len, "Compare all words up to this length");
	auto* ex = eq->add_flag("--exact", eq_exact, "Decide equivalence exactly (one-way or deterministic machines)");
	ml->excludes(ex);

	// gap
	auto* gap = app.add_subcommand("gap", "Prime-encoded graph accessibility");
	gap->require_subcommand(1);
	std::size_t prime_budget = 100;
	gap->add_option("--prime-budget", prime_budget, "Number of primes available to edge numbering");
	std::string gap_graph, gap_m, gap_enc, gap_out;
	std::size_t gap_n = 0;
	auto* g_solve = gap->add_subcommand("solve", "Decide s-t reachability through the unary automaton A_n");
	g_solve->add_option("--graph", gap_graph, "Graph file")->required();
	auto* g_bfs = gap->add_subcommand("bfs", "Decide s-t reachability by breadth-first search");
	g_bfs->add_option("--graph", gap_graph, "Graph file")->required();
	auto* g_enc = gap->add_subcommand("encode", "Print the unary length encoding a graph");
	g_enc->add_option("--graph", gap_graph, "Graph file")->required();
	auto* g_dec = gap->add_subcommand("decode", "Print the graph K_n(m)");
	g_dec->add_option("--m", gap_m, "Decimal m >= 1")->required();
	g_dec->add_option("--n", gap_n, "Vertex count")->required();
	auto* g_pe = gap->add_subcommand("prime-encode", "Factor m into prime powers z1#z2#...");
	g_pe->add_option("--m", gap_m, "Decimal m >= 1")->required();
	auto* g_pd = gap->add_subcommand("prime-decode", "Multiply out a z1#z2#... encoding");
	g_pd->add_option("--encoding", gap_enc, "Prime-power encoding")->required();
	auto* g_build = gap->add_subcommand("build", "Write the automaton A_n");
	g_build->add_option("--n", gap_n, "Vertex count >= 2")->required();
	g_build->add_option("-o,--output", gap_out, "Output file (default stdout)");

	// report
	auto* rep = app.add_subcommand("report", "State-count table for witness families");
	std::vector<std::string> rep_specs;
	std::string rep_family, rep_variant, rep_format = "text", rep_out;
	unsigned rep_from = 1, rep_to = 0;
	rep->add_option("--spec", rep_specs, "F:n:variant, repeatable");
	rep->add_option("--family", rep_family, "I or L (range mode)");
	rep->add_option("--variant", rep_variant, "Construction (range mode)");
	rep->add_option("--n-from", rep_from, "First n (range mode)");
	rep->add_option("--n-to", rep_to, "Last n (range mode)");
	rep->add_option("--format", rep_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
	rep->add_option("-o,--output", rep_out, "Output file (default stdout)");

	std::vector<std::string> reversed(args.rbegin(), args.rend());
	try {
		app.parse(reversed);
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return 0;
	} catch (const CLI::CallForAllHelp&) {
		out << app.help("", CLI::AppFormatMode::All);
		return 0;
	} catch (const CLI::ParseError& e) {
		err << "twfa: " << e.what() << '\n';
		if (!args.empty())
			err << "run 'twfa --help' for usage\n";
		return 2;
	}

	std::ostringstream res;
	int status = 0;
	try {
		auto parse_spec = [](const std::string& fam, unsigned n, const std::string& var) {
			auto f = parse_family(fam);
			if (!f)
				throw usage_error("unknown family '" + fam + "' (expected I or L)");
			auto v = parse_variant(var);
			if (!v)
				throw usage_error("unknown variant '" + var + "'");
			if (n == 0)
				throw usage_error("n must be positive");
			return family_spec{*f, n, *v};
		};

		if (gen->parsed()) {
			auto g = generate(parse_spec(gen_family, gen_n, gen_variant));
			detail::write_or_print(serialize(g.machine), gen_out, res);
		} else if (runc->parsed()) {
			auto m = load_machine(run_machine);
			if (!in_opt->count() && !len_opt->count())
				throw usage_error("run needs --input or --unary-length");
			bool ok;
			if (len_opt->count()) {
				if (run_trace)
					throw usage_error("--trace needs --input");
				ok = detail::accepts_length(m, parse_unary_length(run_length));
				res << (ok ? "accept" : "reject") << '\n';
			} else {
				const auto w = sigma_of(m).parse_word(run_input);
				auto* t = std::get_if<two_way_machine>(&m);
				if (t && t->is_deterministic()) {
					auto tr = run_deterministic(*t, w);
					if (run_trace)
						for (std::size_t i = 0; i < tr.steps.size(); ++i)
							res << i << ' ' << t->state_name(tr.steps[i].state) << ' ' << tr.steps[i].position << '\n';
					ok = tr.result == verdict::accept;
					res << (ok ? "accept" : tr.result == verdict::loop ? "reject (loop)" : "reject") << '\n';
				} else {
					if (run_trace)
						throw usage_error("--trace needs a deterministic two-way machine");
					ok = accepts(m, w);
					res << (ok ? "accept" : "reject") << '\n';
				}
			}
			status = ok ? 0 : 1;
		} else if (conv->parsed()) {
			auto m = load_machine(conv_machine);
			any_machine result;
			if (conv_to == "dfa") {
				result = detail::one_way_dfa_of(m);
			} else if (conv_to == "min") {
				result = minimize(detail::one_way_dfa_of(m));
			} else if (conv_to == "shepherdson") {
				result = shepherdson(detail::require_two_way(m, "shepherdson"));
			} else if (conv_to == "sweeping") {
				result = rotating_to_sweeping(detail::require_two_way(m, "sweeping"));
			} else if (conv_to == "chrobak") {
				auto* p = std::get_if<one_way_machine>(&m);
				if (!p)
					throw usage_error("chrobak needs a one-way machine");
				result = to_machine(chrobak_normal_form(*p), p->sigma());
			} else {
				auto mode = conv_to == "left-end" ? accept_mode::on_left_end
					: conv_to == "right-end"      ? accept_mode::on_right_end
					                              : accept_mode::anywhere;
				result = with_accept_mode(as_two_way(m), mode);
			}
			detail::write_or_print(serialize(canonical_order(result)), conv_out, res);
		} else if (ana->parsed()) {
			auto m = load_machine(ana_machine);
			const auto& sigma = sigma_of(m);
			auto report = [&](const classifier_verdict& v) {
				if (v.holds) {
					res << "holds";
					if (v.method == classifier_method::behavioral)
						res << " (behavioral, lengths <= " << v.bound << ")";
					else
						res << " (structural)";
					res << '\n';
				} else {
					res << "fails: " << v.reason << '\n';
				}
				status = v.holds ? 0 : 1;
			};
			if (ana_check == "validate") {
				auto issues = std::visit([](const auto& x) { return validate(x); }, m);
				for (const auto& s : issues)
					res << s << '\n';
				if (issues.empty())
					res << "valid: " << num_states_of(m) << " states\n";
				status = issues.empty() ? 0 : 1;
			} else if (ana_check == "reversals") {
				auto r = max_reversals(as_two_way(m), ana_max_len);
				res << "max reversals " << r.max_reversals << " on " << detail::quote(sigma, r.witness)
					<< " (lengths <= " << ana_max_len << ")\n";
			} else if (ana_check == "oblivious") {
				report(is_oblivious(as_two_way(m), ana_max_len));
			} else if (ana_check == "sweeping") {
				report(is_sweeping(as_two_way(m), ana_max_len));
			} else if (ana_check == "rotating") {
				report(std::visit([](const auto& x) { return is_rotating(x); }, m));
			} else if (ana_check == "outer-nondet") {
				report(std::visit([](const auto& x) { return is_outer_nondeterministic(x); }, m));
			} else {
				const auto t = as_two_way(m);
				std::optional<std::pair<word, run_count>> worst;
				for_each_word(sigma.size(), ana_max_len, [&](const word& w) {
					auto c = count_accepting_runs(t, w);
					if (c.type != run_count::kind::finite || c.value > 1) {
						worst.emplace(w, c);
						return false;
					}
					return true;
				});
				if (worst) {
					res << "ambiguous: " << detail::quote(sigma, worst->first) << " has "
						<< detail::format_count(worst->second) << " accepting computations\n";
					status = 1;
				} else {
					res << "unambiguous (lengths <= " << ana_max_len << ")\n";
				}
			}
		} else if (eq->parsed()) {
			auto a = load_machine(eq_a);
			auto b = load_machine(eq_b);
			if (!ml->count() && !eq_exact)
				throw usage_error("equiv needs --max-len or --exact");
			auto v = eq_exact ? exact_equiv(a, b) : bounded_equiv(a, b, eq_max_len);
			if (v.equivalent) {
				if (eq_exact)
					res << "equivalent (exact)\n";
				else
					res << "equivalent (bounded " << eq_max_len << ")\n";
			} else {
				res << "inequivalent: witness " << detail::quote(sigma_of(a), *v.witness) << '\n';
			}
			status = v.equivalent ? 0 : 1;
		} else if (gap->parsed()) {
			default_prime_table().set_budget(prime_budget);
			if (g_solve->parsed() || g_bfs->parsed()) {
				auto g = detail::load_graph(gap_graph);
				bool yes = g_solve->parsed() ? solve_gap_via_unary(g) : bfs_gap(g);
				res << (yes ? "yes" : "no") << '\n';
				status = yes ? 0 : 1;
			} else if (g_enc->parsed()) {
				res << encode_graph(detail::load_graph(gap_graph)) << '\n';
			} else if (g_dec->parsed()) {
				if (gap_n == 0)
					throw usage_error("--n must be positive");
				res << serialize(decode_graph(parse_unary_length(gap_m), gap_n));
			} else if (g_pe->parsed()) {
				res << format_prime_encoding(prime_encode(parse_unary_length(gap_m))) << '\n';
			} else if (g_pd->parsed()) {
				res << prime_decode(parse_prime_encoding(gap_enc)) << '\n';
			} else if (g_build->parsed()) {
				detail::write_or_print(serialize(build_unary_gap_2nfa(gap_n)), gap_out, res);
			}
		} else if (rep->parsed()) {
			std::vector<family_spec> specs;
			for (const auto& s : rep_specs) {
				auto c1 = s.find(':');
				auto c2 = c1 == std::string::npos ? c1 : s.find(':', c1 + 1);
				if (c2 == std::string::npos)
					throw usage_error("--spec expects F:n:variant, got '" + s + "'");
				unsigned n = 0;
				try {
					n = static_cast<unsigned>(std::stoul(s.substr(c1 + 1, c2 - c1 - 1)));
				} catch (const std::exception&) {
					throw usage_error("--spec expects F:n:variant, got '" + s + "'");
				}
				specs.push_back(parse_spec(s.substr(0, c1), n, s.substr(c2 + 1)));
			}
			if (!rep_family.empty() || !rep_variant.empty() || rep_to) {
				if (rep_family.empty() || rep_variant.empty() || rep_to < rep_from)
					throw usage_error("range mode needs --family, --variant and --n-from <= --n-to");
				for (unsigned n = rep_from; n <= rep_to; ++n)
					specs.push_back(parse_spec(rep_family, n, rep_variant));
			}
			auto rows = report_state_counts(specs);
			detail::write_or_print(rep_format == "csv" ? format_csv(rows) : format_table(rows), rep_out, res);
		}
	} catch (const std::exception& e) {
		err << "twfa: " << e.what() << '\n';
		return 2;
	}
	out << res.str();
	return status;
}

} // namespace twfa::cli

#endif
