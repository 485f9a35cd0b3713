#include "cpa/cli.hpp"
#include "cpa/linear.hpp"
#include "cpa/expr.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cpa;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("cpa_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string file(const std::string& name, const std::string& text) {
        auto p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string slurp(const fs::path& p) {
        std::ifstream f(p);
        return std::string(std::istreambuf_iterator<char>(f), {});
    }
    fs::path dir_;
};

const char* kA2 = R"({"name":"a2","dim":2,"params":[],"exclusions":[],
"bullet":[{"i":1,"j":1,"k":2,"c":"1"}],
"star":[{"i":1,"j":1,"k":1,"c":"1"},{"i":1,"j":2,"k":2,"c":"1"},{"i":2,"j":1,"k":2,"c":"1"}]})";

}  // namespace

TEST_F(Cli, CheckBuiltinPair) {
    auto r = run({"check", "A2_01-A2_04"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("compatible: true"), std::string::npos);
}

TEST_F(Cli, CheckFileAndMalformedFile) {
    auto good = run({"check", file("a2.cpa.json", kA2), "--format", "json"});
    EXPECT_EQ(good.code, 0);
    EXPECT_TRUE(json::parse(good.out)["compatible"].get<bool>());
    auto bad = run({"check", file("bad.cpa.json", "{\"name\":\"x\",\n\"dim\":}")});
    EXPECT_NE(bad.code, 0);
    EXPECT_NE(bad.err.find("line 2"), std::string::npos);
    EXPECT_NE(run({"check", (dir_ / "missing.json").string()}).code, 0);
}

TEST_F(Cli, CheckReportsNonAssociative) {
    auto r = run({"check", file("n.cpa.json", R"({"name":"n","dim":2,"params":[],"exclusions":[],)"
                                              R"("bullet":[{"i":1,"j":1,"k":1,"c":"1"},{"i":1,"j":1,"k":2,"c":"1"},{"i":2,"j":1,"k":2,"c":"1"}],"star":[]})")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("associative(bullet): false"), std::string::npos);
    EXPECT_NE(r.out.find("compatible: false"), std::string::npos);
}

TEST_F(Cli, InvariantsCentroidContainsIdentity) {
    auto r = run({"invariants", "A2_01-A2_04", "--kind", "centroid", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    EXPECT_GE(j["freedim"].get<std::size_t>(), 1u);
    std::vector<std::vector<Rational>> basis;
    for (const auto& b : j["basis"]) {
        Matrix<Rational> m(2, 2);
        for (int r2 = 0; r2 < 2; ++r2)
            for (int c = 0; c < 2; ++c) m(r2, c) = parse_expression(b[0][r2][c].get<std::string>()).constant_value();
        basis.push_back(flatten<Rational>({m}));
    }
    EXPECT_TRUE(in_span(basis, flatten<Rational>({Matrix<Rational>::identity(2)}), 4));
    EXPECT_NE(run({"invariants", "A2_01-A2_04", "--kind", "rota-baxter"}).code, 0);
    EXPECT_NE(run({"invariants", "A2_01-A2_04", "--kind", "nonsense"}).code, 0);
    EXPECT_NE(run({"invariants", "A2_01-A2_04"}).code, 0);
}

TEST_F(Cli, InvariantsWithParameter) {
    EXPECT_EQ(run({"invariants", "A3_01-A3_02", "--kind", "derivation", "--param", "alpha=2"}).code, 0);
    EXPECT_NE(run({"invariants", "A3_01-A3_02", "--kind", "derivation", "--param", "alpha=x"}).code, 0);
    EXPECT_NE(run({"invariants", "A3_01-A3_02", "--kind", "derivation", "--param", "beta=2"}).code, 0);
}

TEST_F(Cli, OperatorsFamilyAndOracle) {
    auto fam = file("rb.json", R"({"matrix":[["0","0"],["r","0"]]})");
    auto r = run({"operators", "A2_01-A2_04", "--kind", "rota-baxter", "--family", fam, "--format", "json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["verdict"], "ZERO");
    auto o = run({"operators", "A2_01-A2_04", "--kind", "rota-baxter", "--oracle", "5", "--format", "json"});
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(json::parse(o.out)["count"], 5);
    EXPECT_NE(run({"operators", "A2_01-A2_04", "--kind", "rota-baxter", "--family", file("b.json", "[[\"0\"]]")}).code, 0);
    EXPECT_NE(run({"operators", "A2_01-A2_04", "--kind", "rota-baxter", "--oracle", "4"}).code, 0);
    EXPECT_NE(run({"operators", "A2_01-A2_04", "--kind", "rota-baxter"}).code, 0);
    EXPECT_EQ(run({"operators", "A4_01-A4_03", "--kind", "nijenhuis", "--oracle", "5"}).code, 3);
}

TEST_F(Cli, VerifyCatalogIsDeterministic) {
    auto a = run({"verify-catalog", "--out", (dir_ / "a").string()});
    auto b = run({"verify-catalog", "--out", (dir_ / "b").string(), "--format", "json"});
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(slurp(dir_ / "a" / "report.json"), slurp(dir_ / "b" / "report.json"));
    EXPECT_EQ(slurp(dir_ / "a" / "summary.json"), slurp(dir_ / "b" / "summary.json"));
    json rep = json::parse(slurp(dir_ / "a" / "report.json"));
    EXPECT_EQ(rep.size(), 43u);
    EXPECT_EQ(json::parse(b.out)["entries"], 43);
    EXPECT_TRUE(fs::exists(dir_ / "a" / "A2_01-A2_04.json"));
}

TEST_F(Cli, VerifyCatalogOnlyAndStrict) {
    EXPECT_EQ(run({"verify-catalog", "--only", "A2_01-A2_04", "--out", (dir_ / "o").string()}).code, 0);
    EXPECT_EQ(run({"verify-catalog", "--only", "A2_01-A2_04", "--out", (dir_ / "s").string(), "--strict-paper"}).code, 1);
    EXPECT_NE(run({"verify-catalog", "--only", "nothing", "--out", (dir_ / "n").string()}).code, 0);
    EXPECT_NE(run({"verify-catalog"}).code, 0);
}

TEST_F(Cli, CatalogDirFromEnvironment) {
    setenv("CPA_CATALOG_DIR", dir_.c_str(), 1);
    auto r = run({"verify-catalog", "--out", (dir_ / "x").string()});
    unsetenv("CPA_CATALOG_DIR");
    EXPECT_NE(r.code, 0);
}

#include "cpa/report.hpp"

TEST(Report, EmptyListIsValidDocument) {
    EXPECT_EQ(json::parse(emit_report({}, "json")), json::array());
    EXPECT_EQ(emit_report({}, "text"), "");
    EXPECT_EQ(summary_json({})["entries"], 0);
}

TEST(Report, SinglePassCheck) {
    EntryReport r{"e", {{"compatibility", "PASS", {{"nonzero", 0}}}}};
    json j = json::parse(emit_report({r}, "json"));
    EXPECT_EQ(j[0]["entry"], "e");
    EXPECT_EQ(j[0]["checks"][0]["verdict"], "PASS");
    EXPECT_NE(emit_report({r}, "text").find("PASS"), std::string::npos);
}

TEST(Report, TextAndJsonCarrySameDetails) {
    json d = {{"constraints", {"alpha-1"}}, {"residuals", {{{"index", 7}}}}};
    EntryReport r{"e", {{"associativity:bullet", "MISMATCH", d}}};
    std::string text = emit_report({r}, "text");
    EXPECT_NE(text.find(d.dump()), std::string::npos);
    EXPECT_EQ(json::parse(emit_report({r}, "json"))[0]["checks"][0]["details"], d);
    auto s = summary_json({r});
    EXPECT_EQ(s["verdicts"]["MISMATCH"], 1);
    EXPECT_EQ(s["mismatches"][0]["check"], "associativity:bullet");
}

TEST(Report, MismatchDetailsCarryEvidence) {
    std::ostringstream out, err;
    auto dir = fs::temp_directory_path() / "cpa_report_evidence";
    ASSERT_EQ(run_cli({"verify-catalog", "--out", dir.string()}, out, err), 0);
    std::ifstream f(dir / "report.json");
    json rep = json::parse(f);
    for (const auto& e : rep)
        for (const auto& c : e["checks"])
            if (c["verdict"] == "MISMATCH") {
                const auto& d = c["details"];
                bool evidence = (d.contains("constraints") && !d["constraints"].empty()) || (d.contains("residuals") && !d["residuals"].empty());
                EXPECT_TRUE(evidence) << e["entry"] << " " << c["name"];
            }
    fs::remove_all(dir);
}
