#include "ig/cli/commands.hpp"
#include "ig/cli/document.hpp"
#include "ig/random.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace ig;
using namespace ig::cli;

namespace {

std::string data(const std::string& name) { return std::string(IG_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Document load(const std::string& name) { return parse(slurp(data(name))); }

struct Proc {
    std::string out;
    int code = -1;
};

Proc sh(const std::string& args) {
    Proc p;
    FILE* f = popen((std::string(IG_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
    if (!f) return p;
    char buf[4096];
    while (auto n = fread(buf, 1, sizeof buf, f)) p.out.append(buf, n);
    int st = pclose(f);
    p.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return p;
}

const char* kOneEdge = "graph F {\n  vertices a b;\n  edge e1 a -> b w=1/2;\n}\n";

}  // namespace

TEST(Parse, OneEdgeGolden) {
    auto d = parse("graph F { vertices a b; edge e1 a -> b w=1/2; }");
    ASSERT_EQ(d.graphs.size(), 1u);
    const auto& g = d.graphs.at("F");
    ASSERT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.edges()[0].source, "a");
    EXPECT_EQ(g.edges()[0].target, "b");
    EXPECT_EQ(g.edges()[0].weight, GaussRational(ratio(1, 2)));
    EXPECT_EQ(print(d), kOneEdge);
    EXPECT_EQ(parse(print(d)), d);
}

TEST(Parse, EmptyInput) {
    for (const char* t : {"", "\n\n", "# only a comment\n"}) {
        auto d = parse(t);
        EXPECT_TRUE(d.graphs.empty() && d.spaces.empty() && d.kernels.empty() && d.objects.empty() && d.graphings.empty());
        EXPECT_FALSE(d.antipode.has_value());
        EXPECT_EQ(print(d), "");
    }
}

TEST(Parse, DanglingVertex) {
    try {
        parse("graph F {\n  vertices a;\n  edge e1 a -> q w=1;\n}");
        FAIL() << "expected a resolution error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("'q'"), std::string::npos);
        EXPECT_EQ(e.line, 3u);
        EXPECT_GT(e.col, 1u);
    }
}

TEST(Parse, Diagnostics) {
    // lexical
    EXPECT_THROW(parse("graph F { vertices a; $ }"), ParseError);
    // syntactic, with an expected-token set
    try {
        parse("graph F { vertices a b; edge e1 a b w=1; }");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_FALSE(e.expected.empty());
        EXPECT_EQ(e.line, 1u);
    }
    EXPECT_THROW(parse("graph F { vertices a; } graph F { vertices b; }"), ParseError);
    EXPECT_THROW(parse("graph F { vertices a; edge e1 a -> a w=1/0; }"), ParseError);
    EXPECT_THROW(parse("kernel K from X to X { }"), ParseError);
    EXPECT_THROW(parse("space X { points x; } kernel K from X to X { x -> x : -1/2; }"), ParseError);
    EXPECT_THROW(parse("space X { points x x; }"), ParseError);
}

TEST(Parse, Weights) {
    EXPECT_EQ(parse_weight("1/2"), GaussRational(ratio(1, 2)));
    EXPECT_EQ(parse_weight("0.25"), GaussRational(ratio(1, 4)));
    EXPECT_EQ(parse_weight("-2/4"), GaussRational(ratio(-1, 2)));
    EXPECT_EQ(parse_weight("1e-2"), GaussRational(ratio(1, 100)));
    EXPECT_EQ(parse_weight("1+2i"), GaussRational(1, 2));
    EXPECT_EQ(parse_weight("1/2-1/3i"), GaussRational(ratio(1, 2), ratio(-1, 3)));
    EXPECT_EQ(parse_weight("-i"), GaussRational(0, -1));
    EXPECT_EQ(parse_weight("i"), GaussRational(0, 1));
    for (const char* bad : {"", "/2", "1/", "1..2", "abc", "1/0", "2ii"}) EXPECT_FALSE(parse_weight(bad).has_value()) << bad;
}

TEST(Parse, WeightFormatRoundTrip) {
    for (std::size_t i = 0; i < 300; ++i) {
        auto rng = sample::case_rng(71, i);
        GaussRational w(ratio(sample::uniform(rng, -9, 9), sample::uniform(rng, 1, 9)),
                        sample::coin(rng) ? Rational(0) : ratio(sample::uniform(rng, -9, 9), sample::uniform(rng, 1, 9)));
        auto back = parse_weight(format_weight(w));
        ASSERT_TRUE(back.has_value()) << format_weight(w);
        EXPECT_EQ(*back, w) << format_weight(w);
    }
}

TEST(Parse, SampleFilesRoundTrip) {
    for (const char* f : {"loop.ig", "disjoint.ig", "chain.ig", "mixed.ig", "mismatch.ig"}) {
        auto d = load(f);
        auto once = print(d);
        EXPECT_EQ(parse(once), d) << f;
        EXPECT_EQ(print(parse(once)), once) << f;
    }
}

TEST(Parse, RandomGraphsRoundTrip) {
    for (std::size_t i = 0; i < 100; ++i) {
        auto rng = sample::case_rng(72, i);
        Document d;
        d.graphs.emplace("F", sample::graph<GaussRational>(rng));
        d.graphs.emplace("G", sample::graph<GaussRational>(rng));
        auto back = parse(print(d));
        EXPECT_EQ(back, d) << "case " << i;
        EXPECT_EQ(back.graphs.at("F").edges().size(), d.graphs.at("F").edges().size());
    }
}

TEST(Run, ZetaOfLoop) {
    Flags f;
    f.order = 4;
    auto o = run("zeta", load("loop.ig"), {"L"}, f);
    EXPECT_EQ(o.exit_code, 0);
    EXPECT_EQ(o.report["schema"], 1);
    EXPECT_EQ(o.report["outputs"]["coefficients"], Json::parse(R"(["1","1/2","1/4","1/8","1/16"])"));
    EXPECT_EQ(o.report["outputs"]["rational"], "(1)/(1 + (-1/2)*z)");
    EXPECT_EQ(o.report["pass"], true);
}

TEST(Run, ZetaFloat) {
    Flags f;
    f.order = 3;
    f.mode = "float";
    auto o = run("zeta", load("loop.ig"), {"L"}, f);
    ASSERT_EQ(o.exit_code, 0);
    EXPECT_NEAR(o.report["outputs"]["coefficients"][2].get<double>(), 0.25, 1e-12);
}

TEST(Run, CocycleDisjointTriple) {
    auto o = run("check-cocycle", load("disjoint.ig"), {"F", "G", "H"}, Flags{});
    EXPECT_EQ(o.exit_code, 0);
    EXPECT_EQ(o.report["outputs"]["holds"], true);
    EXPECT_EQ(o.report["outputs"]["lhs_rational"], "1");
    EXPECT_EQ(o.report["outputs"]["rhs_rational"], "1");
}

TEST(Run, CocycleViolationExitsOne) {
    auto o = run("check-cocycle", load("mismatch.ig"), {"F", "G", "H"}, Flags{});
    EXPECT_EQ(o.exit_code, 1);
    EXPECT_EQ(o.report["pass"], false);
    EXPECT_EQ(o.report["outputs"]["holds_at_one"], true);
}

TEST(Run, CheckLawsExponentials) {
    Flags f;
    f.suite = "exponentials";
    f.seed = 7;
    f.samples = 100;
    auto o = run("check-laws", Document{}, {}, f);
    EXPECT_EQ(o.exit_code, 0);
    EXPECT_EQ(o.report["pass"], true);
    ASSERT_EQ(o.report["outputs"]["laws"].size(), 3u);
    for (const auto& l : o.report["outputs"]["laws"]) {
        EXPECT_EQ(l["cases"], 100);
        EXPECT_EQ(l["violations"], 0);
    }
    EXPECT_EQ(o.report["flags"]["seed"], 7);
}

TEST(Run, Deterministic) {
    Flags f;
    f.suite = "duality";
    f.seed = 11;
    f.samples = 10;
    EXPECT_EQ(run("check-laws", Document{}, {}, f).report.dump(), run("check-laws", Document{}, {}, f).report.dump());
    auto d = load("mixed.ig");
    Flags g;
    g.cut = {"p1", "p2", "p3"};
    EXPECT_EQ(run("exec", d, {"GF", "GG"}, g).report.dump(), run("exec", d, {"GF", "GG"}, g).report.dump());
}

TEST(Run, ChainKernel) {
    auto d = load("chain.ig");
    auto z = run("zeta-kernel", d, {"K"}, Flags{});
    EXPECT_EQ(z.report["outputs"]["rational"], "(1)/(1 + (-1)*z^2)");
    auto e = run("exec", d, {"K"}, Flags{});
    EXPECT_EQ(e.exit_code, 0);
}

TEST(Run, LogicCommands) {
    auto d = load("mixed.ig");
    EXPECT_EQ(run("exp", d, {"der", "D"}, Flags{}).report["outputs"]["holds"], true);
    EXPECT_EQ(run("exp", d, {"dig", "D"}, Flags{}).report["outputs"]["holds"], true);
    EXPECT_EQ(run("exp", d, {"promote", "Arg", "D"}, Flags{}).report["outputs"]["holds"], true);
    EXPECT_THROW(run("exp", d, {"der", "B"}, Flags{}), UsageError);
    Flags fl;
    fl.mode = "float";
    EXPECT_THROW(run("check-orth", d, {"O", "Q"}, fl), UsageError);
    auto orth = run("check-orth", d, {"O", "Q"}, Flags{});
    EXPECT_TRUE(orth.report["outputs"].contains("orthogonal"));
}

TEST(Run, Errors) {
    auto d = load("loop.ig");
    EXPECT_THROW(run("nope", d, {"L"}, Flags{}), UsageError);
    EXPECT_THROW(run("zeta", d, {"Missing"}, Flags{}), Error);
    Flags bad;
    bad.mode = "fuzzy";
    EXPECT_THROW(run("zeta", d, {"L"}, bad), UsageError);
    Flags order;
    order.order = 0;
    EXPECT_THROW(run("zeta", d, {"L"}, order), UsageError);
    Flags conv;
    conv.convention = "other";
    EXPECT_THROW(run("zeta", d, {"L"}, conv), UsageError);
    EXPECT_THROW(run("zeta", d, {}, Flags{}), UsageError);
}

TEST(Binary, ExitCodes) {
    auto ok = sh("zeta L --order 3 -f " + data("loop.ig"));
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(Json::parse(ok.out)["outputs"]["rational"], "(1)/(1 + (-1/2)*z)");
    EXPECT_EQ(sh("check-cocycle F G H -f " + data("mismatch.ig")).code, 1);
    auto missing = sh("zeta Nope -f " + data("loop.ig"));
    EXPECT_EQ(missing.code, 2);
    EXPECT_EQ(Json::parse(missing.out)["error"]["kind"], "usage");
    EXPECT_EQ(sh("zeta L --mode fuzzy -f " + data("loop.ig")).code, 2);
    EXPECT_EQ(sh("frobnicate").code, 2);
    EXPECT_EQ(sh("zeta L -f /nonexistent/file.ig").code, 2);
}

TEST(Binary, StdinAndParseErrors) {
    auto p = sh("zeta F < " + data("disjoint.ig"));
    EXPECT_EQ(p.code, 0);
    auto bad = sh("zeta F -f " + data("../test_cli.cpp"));
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(Json::parse(bad.out)["error"]["kind"], "parse");
}

TEST(Binary, ByteIdenticalReports) {
    auto a = sh("check-laws --suite exponentials --seed 7 --samples 20");
    auto b = sh("check-laws --suite exponentials --seed 7 --samples 20");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
}
