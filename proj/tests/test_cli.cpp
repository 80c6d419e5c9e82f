// End-to-end tests of the homforge binary: exit codes, report determinism and
// a few representative commands over the bundled fixtures.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef HOMFORGE_BIN
#define HOMFORGE_BIN "./homforge"
#endif
#ifndef FIXTURES_DIR
#define FIXTURES_DIR "fixtures"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string out_file = std::string("cli_out_") + std::to_string(rand()) + ".txt";
    std::string cmd = std::string(HOMFORGE_BIN) + " " + args + " > " + out_file + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::remove(out_file.c_str());
    return r;
}

std::string fx(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("validate: ok and violation exit codes") {
    auto ok = run("validate --complex " + fx("koszul_xy_kxy22.json"));
    CHECK(ok.code == 0);
    CHECK(ok.out.find("\"ok\"") != std::string::npos);

    write_file("bad_complex.json", R"({
      "ring": {"field": "Q", "vars": ["x"], "relations": ["x^2"], "backend": "artinian"},
      "terms": {"-1": {"rank": 1}, "0": {"rank": 1}, "1": {"rank": 1}},
      "differentials": {"-1": [["x"]], "0": [["1"]]}
    })");
    auto bad = run("validate --complex bad_complex.json");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("violation") != std::string::npos);
    CHECK(bad.out.find("\"index\": -1") != std::string::npos);
    std::remove("bad_complex.json");

    auto missing = run("validate --complex no_such_file.json");
    CHECK(missing.code == 2);
}

TEST_CASE("reports are byte-stable across runs") {
    std::string cmd = "ar --complex " + fx("stalkA_kx2.json") + " --seed 7";
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("cohomology of the two-term fixture") {
    auto r = run("cohomology --complex " + fx("two_term_x_kx2.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("\"kdim\": 1") != std::string::npos);
}

TEST_CASE("tate betti line matches the known pattern") {
    auto r = run("tate --ring " + fx("kx2.json") + " --bound 8 --format text");
    CHECK(r.code == 0);
    CHECK(r.out.find("betti: 1 1 1 1 1 1 1 1 1") != std::string::npos);
    auto rf = run("tate --ring " + fx("kx2.json") + " --bound 6 --emit-filtration");
    CHECK(rf.code == 0);
    CHECK(rf.out.find("\"filtration_good\": true") != std::string::npos);
    CHECK(rf.out.find("\"parameter\": 1") != std::string::npos);
}

TEST_CASE("ar triangle over k[x]/(x^2): connecting map is x times the identity") {
    auto r = run("ar --complex " + fx("stalkA_kx2.json") + " --format text");
    CHECK(r.code == 0);
    CHECK(r.out.find("connecting map: x") != std::string::npos);
    CHECK(r.out.find("RAR1-3: pass") != std::string::npos);
}

TEST_CASE("iso and minimize commands") {
    auto self = run("iso --left " + fx("two_term_x_kx2.json") + " --right " +
                    fx("two_term_x_kx2.json"));
    CHECK(self.code == 0);
    auto diff = run("iso --left " + fx("two_term_x_kx2.json") + " --right " +
                    fx("stalkA_kx2.json"));
    CHECK(diff.code == 1);
    CHECK(diff.out.find("not-isomorphic") != std::string::npos);
    auto m = run("minimize --complex " + fx("koszul_xy_kxy22.json") + " --format text");
    CHECK(m.code == 0);
    CHECK(m.out.find("already minimal") != std::string::npos);
}

TEST_CASE("resolve a module presentation") {
    write_file("mod_k.json", R"({
      "ring": {"field": "Q", "vars": ["x", "y"], "relations": ["x^2", "y^2"], "backend": "artinian"},
      "generators": 1,
      "relations": [["x", "y"]]
    })");
    auto r = run("resolve --module mod_k.json --bound 4 --format text");
    CHECK(r.code == 0);
    CHECK(r.out.find("betti: 1 2 3 4 5") != std::string::npos);
    std::remove("mod_k.json");
}

TEST_CASE("koszul and dual commands on fixtures") {
    auto k = run("koszul --ring " + fx("kxy22.json") + " --elems x,y");
    CHECK(k.code == 0);
    CHECK(k.out.find("\"rank\": 2") != std::string::npos);
    auto d = run("dual --complex " + fx("two_term_x_kx2.json"));
    CHECK(d.code == 0);
}

TEST_CASE("miyata on a split triangle file") {
    // triangle A --i--> A + A[1]... a simple split: U = V = stalk, zero glue
    write_file("tri_split.json", R"({
      "ring": {"field": "Q", "vars": ["x"], "relations": ["x^2"], "backend": "artinian"},
      "x0": {"support": [0, 0], "terms": {"0": {"rank": 1}}, "differentials": {}},
      "x1": {"support": [0, 0], "terms": {"0": {"rank": 2}}, "differentials": {}},
      "x2": {"support": [0, 0], "terms": {"0": {"rank": 1}}, "differentials": {}},
      "f0": {"0": [["1"], ["0"]]},
      "f1": {"0": [["0", "1"]]},
      "f2": {}
    })");
    auto r = run("miyata --triangle tri_split.json");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"split\"") != std::string::npos);
    std::remove("tri_split.json");
}

TEST_CASE("quick suite passes against the bundled fixtures") {
    auto r = run(std::string("suite quick --fixtures ") + FIXTURES_DIR + " --format text");
    CHECK(r.code == 0);
    CHECK(r.out.find("all checks pass") != std::string::npos);
    auto unknown = run("suite nope");
    CHECK(unknown.code == 2);
}

TEST_CASE("filtration emitted by tate verifies as good") {
    auto emit = run("tate --ring " + fx("kx2.json") + " --bound 5 --emit-filtration --out tate_f.json");
    REQUIRE(emit.code == 0);
    std::ifstream in("tate_f.json");
    nlohmann::json j;
    in >> j;
    write_file("filt.json", j["filtration"].dump());
    auto verify = run("filtration-verify --ring " + fx("kx2.json") +
                      " --bound 5 --filtration filt.json");
    CHECK(verify.code == 0);
    CHECK(verify.out.find("\"good\"") != std::string::npos);
    // mutate: drop a word from a piece and expect a witnessed failure
    auto& pieces = j["filtration"]["pieces"];
    bool mutated = false;
    for (auto& [pk, piece] : pieces.items()) {
        for (auto& [dk, words] : piece.items()) {
            if (words.is_array() && !words.empty() && dk != "0") {
                words.erase(0);
                mutated = true;
                break;
            }
        }
        if (mutated) break;
    }
    REQUIRE(mutated);
    write_file("filt_bad.json", j["filtration"].dump());
    auto bad = run("filtration-verify --ring " + fx("kx2.json") +
                   " --bound 5 --filtration filt_bad.json");
    CHECK(bad.code == 1);
    std::remove("tate_f.json");
    std::remove("filt.json");
    std::remove("filt_bad.json");
}

TEST_CASE("hom, matlis and presentation commands") {
    auto h = run("hom --source " + fx("two_term_x_kx2.json") + " --target " +
                 fx("stalkA_kx2.json"));
    CHECK(h.code == 0);
    CHECK(h.out.find("\"hom_K_dim\": 1") != std::string::npos);
    auto m = run("matlis --ring " + fx("kxy22.json"));
    CHECK(m.code == 0);
    CHECK(m.out.find("\"dimension\": 4") != std::string::npos);
    CHECK(m.out.find("\"gorenstein\": true") != std::string::npos);
    auto mc = run("matlis --complex " + fx("stalkA_kx2.json"));
    CHECK(mc.code == 0);
    auto p = run("cohomology --complex " + fx("two_term_x_kx2.json") + " --presentation");
    CHECK(p.code == 0);
    CHECK(p.out.find("\"generators\": 1") != std::string::npos);
    auto rc = run("resolve --complex " + fx("stalkA_kx2.json") + " --bound 3");
    CHECK(rc.code == 0);
}

TEST_CASE("serre command over the Gorenstein fixture") {
    auto r = run("serre --complex " + fx("koszul_xy_kxy22.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("\"width_preserved\": true") != std::string::npos);
}

TEST_CASE("cone-family over the graded ring") {
    write_file("stalk_graded.json", R"({
      "ring": {"field": "Q", "vars": ["x"], "relations": [], "backend": {"graded": 16}},
      "support": [0, 0],
      "terms": {"0": {"rank": 1, "degrees": [0]}},
      "differentials": {}
    })");
    auto r = run("cone-family --complex stalk_graded.json --r x --max-n 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("not-isomorphic") != std::string::npos);
    std::remove("stalk_graded.json");
}
