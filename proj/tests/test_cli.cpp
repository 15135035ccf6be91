#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <twfa/cli.hpp>
#include <twfa/text_format.hpp>

using namespace twfa;
namespace fs = std::filesystem;

namespace {

struct result {
	int status;
	std::string out, err;
};

result run(std::vector<std::string> args) {
	std::ostringstream out, err;
	int s = cli::run(args, out, err);
	return {s, out.str(), err.str()};
}

class scratch_dir {
public:
	scratch_dir() {
		path_ = fs::temp_directory_path() / ("twfa_cli_" + std::to_string(std::random_device{}()));
		fs::create_directories(path_);
	}
	~scratch_dir() {
		std::error_code ec;
		fs::remove_all(path_, ec);
	}
	std::string file(const std::string& name) const { return (path_ / name).string(); }
	std::string write(const std::string& name, const std::string& text) const {
		std::ofstream(file(name)) << text;
		return file(name);
	}

private:
	fs::path path_;
};

std::string gen_to(const scratch_dir& d, const std::string& fam, unsigned n, const std::string& var) {
	auto path = d.file(fam + std::to_string(n) + "_" + var + ".aut");
	auto r = run({"gen", "--family", fam, "--n", std::to_string(n), "--variant", var, "-o", path});
	REQUIRE(r.status == 0);
	return path;
}

const std::string sample_graph_path = std::string(TWFA_DATA_DIR) + "/sample4.g";

} // namespace

TEST_CASE("gen writes a parseable machine") {
	scratch_dir d;
	auto path = gen_to(d, "L", 3, "sweeping-quadratic");
	auto m = load_machine(path);
	CHECK(std::holds_alternative<two_way_machine>(m));
	auto r = run({"gen", "--family", "I", "--n", "2", "--variant", "one-way-nfa"});
	CHECK(r.status == 0);
	CHECK(r.out.starts_with("kind: 1nfa\n"));
	CHECK(parse_machine(r.out) == generate({family::I, 2, variant::one_way_nfa}).machine);
}

TEST_CASE("usage errors exit 2 with nothing on stdout") {
	for (const auto& args : std::vector<std::vector<std::string>>{
			 {},
			 {"run", "--bogus"},
			 {"frobnicate"},
			 {"gen", "--family", "K", "--n", "2", "--variant", "one-way-nfa"},
			 {"gen", "--family", "I", "--n", "2", "--variant", "two-way-naive"},
			 {"gen", "--family", "L", "--n", "0", "--variant", "one-way-nfa"},
			 {"gen", "--family", "L", "--n", "x", "--variant", "one-way-nfa"},
			 {"run", "--machine", "/nonexistent/file.aut", "--input", "ab"},
			 {"equiv", "/nonexistent/a", "/nonexistent/b", "--max-len", "3"},
			 {"gap", "decode", "--m", "12a", "--n", "2"},
			 {"gap", "--prime-budget", "3", "decode", "--m", "12", "--n", "2"},
			 {"report", "--spec", "L-3-naive"},
			 {"convert", "--machine", "x.aut", "--to", "nothing"},
		 }) {
		INFO(args.size());
		auto r = run(args);
		CHECK(r.status == 2);
		CHECK(r.out.empty());
		CHECK_FALSE(r.err.empty());
	}
}

TEST_CASE("run reports accept and reject through the exit status") {
	scratch_dir d;
	auto path = gen_to(d, "L", 3, "sweeping-quadratic");
	auto r = run({"run", "--machine", path, "--input", "abbab"});
	CHECK(r.status == 0);
	CHECK(r.out == "accept\n");
	r = run({"run", "--machine", path, "--input", "aab"});
	CHECK(r.status == 1);
	CHECK(r.out == "reject\n");
	r = run({"run", "--machine", path, "--input", "abc"});
	CHECK(r.status == 2);
	CHECK(r.out.empty());
	r = run({"run", "--machine", path});
	CHECK(r.status == 2);
}

TEST_CASE("run --trace lists configurations") {
	scratch_dir d;
	auto path = gen_to(d, "I", 2, "two-way-one-reversal");
	auto r = run({"run", "--machine", path, "--input", "ab", "--trace"});
	CHECK(r.status == 0);
	std::istringstream lines(r.out);
	std::string first;
	std::getline(lines, first);
	CHECK(first.starts_with("0 "));
	CHECK(r.out.ends_with("accept\n"));
	auto nfa = gen_to(d, "I", 2, "one-way-nfa");
	CHECK(run({"run", "--machine", nfa, "--input", "ab", "--trace"}).status == 2);
}

TEST_CASE("run --unary-length routes to length-only simulation") {
	scratch_dir d;
	auto a4 = d.file("a4.aut");
	REQUIRE(run({"gap", "build", "--n", "4", "-o", a4}).status == 0);
	auto r = run({"run", "--machine", a4, "--unary-length", "892551"});
	CHECK(r.status == 0);
	CHECK(r.out == "accept\n");
	r = run({"run", "--machine", a4, "--unary-length", "892553"});
	CHECK(r.status == 1);
	r = run({"run", "--machine", a4, "--unary-length", "1000000000000000000000000000000000000000"});
	CHECK(r.status != 2);
	r = run({"run", "--machine", a4, "--unary-length", "-5"});
	CHECK(r.status == 2);

	auto cyc = d.write("cycle.aut", "kind: 1dfa\nalphabet: a\nstates: p q r\ninitial: p\naccepting: p\n"
									"t: p a -> q\nt: q a -> r\nt: r a -> p\n");
	CHECK(run({"run", "--machine", cyc, "--unary-length", "300000000000000000000000000000"}).status == 0);
	CHECK(run({"run", "--machine", cyc, "--unary-length", "300000000000000000000000000001"}).status == 1);
	auto ab = gen_to(d, "L", 2, "one-way-nfa");
	CHECK(run({"run", "--machine", ab, "--unary-length", "3"}).status == 2);
}

TEST_CASE("equiv prints verdicts") {
	scratch_dir d;
	auto a = gen_to(d, "I", 3, "one-way-nfa");
	auto b = gen_to(d, "I", 3, "two-way-one-reversal");
	auto r = run({"equiv", a, b, "--max-len", "10"});
	CHECK(r.status == 0);
	CHECK(r.out == "equivalent (bounded 10)\n");
	r = run({"equiv", a, b, "--exact"});
	CHECK(r.status == 0);
	CHECK(r.out == "equivalent (exact)\n");
	auto l2 = gen_to(d, "L", 2, "one-way-nfa");
	auto l3 = gen_to(d, "L", 3, "one-way-nfa");
	r = run({"equiv", l2, l3, "--max-len", "6"});
	CHECK(r.status == 1);
	CHECK(r.out == "inequivalent: witness 'aba'\n");
	CHECK(run({"equiv", l2, l3}).status == 2);
	CHECK(run({"equiv", l2, l3, "--exact", "--max-len", "3"}).status == 2);
}

TEST_CASE("analyze reports classifier verdicts") {
	scratch_dir d;
	auto naive = gen_to(d, "L", 2, "two-way-naive");
	auto r = run({"analyze", "--check", "sweeping", "--max-len", "12", naive});
	CHECK(r.status == 1);
	CHECK(r.out.starts_with("fails: reversal at position"));
	CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("on word"));
	r = run({"analyze", "--check", "oblivious", "--max-len", "8", naive});
	CHECK(r.status == 0);
	CHECK(r.out == "holds (behavioral, lengths <= 8)\n");
	auto outer = gen_to(d, "L", 2, "outer-nondet");
	r = run({"analyze", outer, "--check", "outer-nondet"});
	CHECK(r.status == 0);
	CHECK(r.out == "holds (structural)\n");
	r = run({"analyze", naive, "--check", "rotating"});
	CHECK(r.status == 1);
	CHECK(r.out.starts_with("fails: "));
	r = run({"analyze", naive, "--check", "validate"});
	CHECK(r.status == 0);
	CHECK(r.out.starts_with("valid: "));
	auto l1 = gen_to(d, "L", 1, "one-way-nfa");
	r = run({"analyze", l1, "--check", "ambiguity", "--max-len", "4"});
	CHECK(r.status == 1);
	CHECK(r.out.starts_with("ambiguous: "));
	auto i3 = gen_to(d, "I", 3, "one-way-nfa");
	CHECK(run({"analyze", i3, "--check", "ambiguity"}).status == 0);
	r = run({"analyze", gen_to(d, "I", 2, "two-way-one-reversal"), "--check", "reversals"});
	CHECK(r.status == 0);
	CHECK(r.out.starts_with("max reversals 1 on "));
	CHECK(run({"analyze", naive, "--check", "oblivious", "--max-len", "40"}).status == 2);
}

TEST_CASE("convert emits canonical machines") {
	scratch_dir d;
	auto l3 = gen_to(d, "L", 3, "one-way-nfa");
	auto r = run({"convert", "--machine", l3, "--to", "min"});
	CHECK(r.status == 0);
	auto m = std::get<one_way_machine>(parse_machine(r.out));
	CHECK(m.num_states() == 9);
	CHECK(m.initial() == 0);
	CHECK(run({"convert", "--machine", l3, "--to", "min"}).out == r.out);

	auto rot = gen_to(d, "L", 2, "rotating");
	r = run({"convert", "--machine", rot, "--to", "sweeping"});
	CHECK(r.status == 0);
	auto sweeping = d.write("sw.aut", r.out);
	CHECK(run({"equiv", rot, sweeping, "--max-len", "10"}).status == 0);

	auto one_rev = gen_to(d, "I", 2, "two-way-one-reversal");
	r = run({"convert", "--machine", one_rev, "--to", "shepherdson"});
	CHECK(r.status == 0);
	CHECK(run({"equiv", one_rev, d.write("sh.aut", r.out), "--exact"}).status == 0);

	r = run({"convert", "--machine", one_rev, "--to", "left-end"});
	CHECK(r.status == 0);
	CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("accept-mode: left-end"));

	auto cyc = d.write("u.aut", "kind: 1nfa\nalphabet: a\nstates: s e0 e1\ninitial: s\naccepting: s e0\n"
								"t: s a -> e1\nt: e1 a -> e0\nt: e0 a -> e1\n");
	r = run({"convert", "--machine", cyc, "--to", "chrobak"});
	CHECK(r.status == 0);
	CHECK(run({"equiv", cyc, d.write("c.aut", r.out), "--max-len", "20"}).status == 0);
	CHECK(run({"convert", "--machine", l3, "--to", "chrobak"}).status == 2);
	CHECK(run({"convert", "--machine", l3, "--to", "shepherdson"}).status == 2);
}

TEST_CASE("gap subcommands") {
	auto r = run({"gap", "solve", "--graph", sample_graph_path});
	CHECK(r.status == 0);
	CHECK(r.out == "yes\n");
	r = run({"gap", "bfs", "--graph", sample_graph_path});
	CHECK(r.out == "yes\n");
	r = run({"gap", "encode", "--graph", sample_graph_path});
	CHECK(r.out == "892551\n");
	r = run({"gap", "decode", "--m", "892551", "--n", "4"});
	CHECK(r.status == 0);
	CHECK(r.out == "n 4\nedge 0 1\nedge 1 0\nedge 1 2\nedge 2 3\nedge 3 1\n");
	r = run({"gap", "prime-encode", "--m", "892551"});
	CHECK(r.out == "3#11#17#37#43\n");
	r = run({"gap", "prime-decode", "--encoding", "8#9#5"});
	CHECK(r.out == "360\n");
	scratch_dir d;
	auto g = d.write("no.g", "n 3\nedge 1 2\n");
	r = run({"gap", "solve", "--graph", g});
	CHECK(r.status == 1);
	CHECK(r.out == "no\n");
	CHECK(run({"gap", "solve", "--graph", d.write("bad.g", "n 2\nedge 0 7\n")}).status == 2);
	CHECK(run({"gap", "build", "--n", "1"}).status == 2);
}

TEST_CASE("report tables") {
	auto r = run({"report", "--family", "I", "--variant", "one-way-nfa", "--n-from", "1", "--n-to", "6", "--format", "csv"});
	REQUIRE(r.status == 0);
	std::istringstream in(r.out);
	std::string line;
	std::getline(in, line);
	CHECK(line == "family,n,variant,states,min_one_way_states,max_reversals");
	std::vector<std::string> mins;
	while (std::getline(in, line)) {
		std::vector<std::string> cells;
		std::stringstream ls(line);
		for (std::string c; std::getline(ls, c, ',');)
			cells.push_back(c);
		REQUIRE(cells.size() == 6);
		mins.push_back(cells[4]);
	}
	CHECK(mins == std::vector<std::string>{"2", "4", "8", "16", "32", "64"});

	r = run({"report", "--family", "L", "--variant", "one-way-nfa", "--n-from", "1", "--n-to", "5", "--format", "csv"});
	CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("L,5,one-way-nfa,7,33,-"));

	r = run({"report", "--format", "csv"});
	CHECK(r.status == 0);
	CHECK(r.out == "family,n,variant,states,min_one_way_states,max_reversals\n");

	std::vector<std::string> args{"report", "--format", "csv", "--spec", "L:2:sweeping-linear", "--spec",
		"I:3:rotating", "--spec", "L:2:outer-nondet", "--spec", "I:2:two-way-one-reversal"};
	auto first = run(args);
	auto second = run(args);
	CHECK(first.status == 0);
	CHECK(first.out == second.out);
	CHECK_THAT(first.out, Catch::Matchers::ContainsSubstring("L,2,outer-nondet,"));
	CHECK_THAT(first.out, Catch::Matchers::ContainsSubstring("I,2,two-way-one-reversal,4,4,1"));

	auto text = run({"report", "--spec", "L:2:sweeping-linear"});
	CHECK(text.status == 0);
	CHECK(text.out.starts_with("family"));
}

TEST_CASE("help exits 0") {
	auto r = run({"--help"});
	CHECK(r.status == 0);
	CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("gen"));
}

TEST_CASE("double dash ends option parsing") {
	scratch_dir d;
	auto a = gen_to(d, "I", 2, "one-way-nfa");
	auto r = run({"equiv", "--max-len", "4", "--", a, a});
	CHECK(r.status == 0);
	CHECK(r.out == "equivalent (bounded 4)\n");
}
