#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "flatcert/cli.hpp"

using namespace flatcert;

namespace {

const std::string kData = FLATCERT_TEST_DATA;

nlohmann::json load(const std::string& relative) { return nlohmann::json::parse(report::read_file(kData + "/" + relative)); }

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_path(const std::vector<report::DiffEntry>& d, const std::string& prefix)
{
    for (auto& e : d)
        if (e.path.rfind(prefix, 0) == 0) return true;
    return false;
}

}  // namespace

TEST(Diff, ReportAgainstItselfIsEmpty)
{
    auto t = weyl::classification_table(weyl::preset("gu24-split"));
    EXPECT_TRUE(report::diff_reports(t, t).empty());
    EXPECT_EQ(report::diff_text({}), "identical\n");
}

TEST(Diff, SplitAgainstNonSplitLocatesNewtonRows)
{
    auto a = weyl::classification_table(weyl::preset("gu24-split"));
    auto b = weyl::classification_table(weyl::preset("gu24-nonsplit"));
    auto d = report::diff_reports(a, b);
    EXPECT_TRUE(has_path(d, "rows[s3s2s3s1s0s2s0].newton"));
    EXPECT_TRUE(has_path(d, "rows[s3s2s1].category"));
    EXPECT_FALSE(has_path(d, "rows[1]."));
    auto j = report::to_json(d);
    EXPECT_EQ(j["schema"], "flatcert.diff/1");
    EXPECT_FALSE(j["identical"].get<bool>());
}

TEST(Diff, IgnoresTimingsAndManifest)
{
    nlohmann::json a{{"schema", "x/1"}, {"value", 1}, {"timings", {{"total", 1.0}}}};
    nlohmann::json b{{"schema", "x/1"}, {"value", 1}, {"manifest", {{"command", {"a"}}}}};
    EXPECT_TRUE(report::diff_reports(a, b).empty());
    b["value"] = 2;
    auto d = report::diff_reports(a, b);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].path, "value");
    EXPECT_EQ(d[0].kind, report::DiffEntry::Changed);
}

TEST(Diff, SchemaMismatchIsRejected)
{
    nlohmann::json a{{"schema", "x/1"}}, b{{"schema", "y/1"}}, c{{"value", 1}};
    EXPECT_THROW(report::diff_reports(a, b), PreconditionViolation);
    EXPECT_THROW(report::diff_reports(c, c), PreconditionViolation);
}

TEST(Golden, ClassificationTables)
{
    for (std::string name : {"gu24-split", "gu24-nonsplit"}) {
        auto d = report::diff_reports(load("golden/" + name + ".json"), weyl::classification_table(weyl::preset(name)));
        EXPECT_TRUE(d.empty()) << name << "\n" << report::diff_text(d);
    }
}

TEST(Golden, FourByFourCertificate)
{
    auto d = report::diff_reports(load("golden/j24-certificate.json"), to_json(certify(DeterminantalIdealSpec(2, 4))));
    EXPECT_TRUE(d.empty()) << report::diff_text(d);
}

TEST(BasisFile, RoundTripAndTamper)
{
    auto I = parse_ideal(report::read_file(kData + "/data/twisted_cubic.txt"));
    auto G = buchberger(I);
    auto j = basis_to_json(G);
    auto back = basis_from_json(j);
    ASSERT_EQ(back.elements.size(), G.elements.size());
    for (std::size_t i = 0; i < G.elements.size(); ++i) EXPECT_EQ(format_poly(back.elements[i]), format_poly(G.elements[i]));
    j["elements"][0] = "x";
    EXPECT_THROW(basis_from_json(j), ParseError);
}

TEST(IdealInput, TextAndJsonAgree)
{
    auto a = parse_ideal(report::read_file(kData + "/data/twisted_cubic.txt"));
    auto b = parse_ideal(report::read_file(kData + "/data/twisted_cubic.json"));
    EXPECT_EQ(a.vars()->names(), b.vars()->names());
    ASSERT_EQ(a.size(), b.size());
    EXPECT_TRUE(ideal_equal(a, b));
}

TEST(IdealInput, VariablesInOrderOfAppearance)
{
    auto I = parse_ideal("b*a - c\na^2\n");
    EXPECT_EQ(I.vars()->names(), (std::vector<std::string>{"b", "a", "c"}));
}

TEST(IdealInput, Rejections)
{
    EXPECT_THROW(parse_ideal("# nothing\n"), PreconditionViolation);
    EXPECT_THROW(parse_ideal("{\"generators\": [\"x\"]}"), ParseError);
    EXPECT_THROW(parse_ideal("{\"variables\": [\"x\"], "), ParseError);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli({"gb", "compute", "--in", kData + "/data/empty.txt"}).code, 2);
    EXPECT_EQ(run_cli({"gb", "frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"weyl", "newton", "--word", "3,9"}).code, 2);
    auto ok = run_cli({"gb", "compute", "--in", kData + "/data/twisted_cubic.txt", "--format", "text"});
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("y*w - z^2"), std::string::npos);
}

TEST(Cli, ClassificationTableText)
{
    auto r = run_cli({"weyl", "table", "--preset", "gu24-split", "--format", "text"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("s₃s₂s₁s₀s₂ → (1, 0, 0)"), std::string::npos);
}

TEST(Cli, JsonOutputCarriesManifest)
{
    auto r = run_cli({"weyl", "newton", "--word", "3,2,1,0"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.contains("manifest"));
    EXPECT_EQ(j["manifest"]["versions"]["flatcert"], report::kVersion);
}

TEST(Cli, ReportDiffExitCode)
{
    EXPECT_EQ(run_cli({"report", "diff", kData + "/golden/gu24-split.json", kData + "/golden/gu24-split.json"}).code, 0);
    EXPECT_EQ(run_cli({"report", "diff", kData + "/golden/gu24-split.json", kData + "/golden/gu24-nonsplit.json"}).code, 1);
    EXPECT_EQ(run_cli({"report", "diff", kData + "/golden/gu24-split.json", kData + "/golden/j24-certificate.json"}).code, 2);
}

TEST(Cli, OutputFileIsWrittenWithSidecarManifest)
{
    auto dir = std::filesystem::temp_directory_path() / "flatcert_report_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto out = (dir / "basis.txt").string();
    auto r = run_cli({"--out", out, "--format", "text", "gb", "compute", "--in", kData + "/data/twisted_cubic.txt"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(std::filesystem::exists(out));
    EXPECT_TRUE(std::filesystem::exists(out + ".manifest.json"));
}
