#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "stratnet/rewrite.hpp"

using namespace stratnet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
};

Outcome run(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + " " + STRATNET_CLI + std::string(" ") + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t k = fread(buf, 1, sizeof buf, p))
        out.append(buf, k);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() / ("stratnet_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string put(const std::string& name, const Net& n) { return put_text(name, save_net(n)); }
    std::string put_text(const std::string& name, const std::string& text)
    {
        auto path = dir / name;
        std::ofstream(path) << text;
        return path.string();
    }
    fs::path dir;
};

}

TEST_F(Cli, Validate)
{
    EXPECT_EQ(run("validate " + put("ax.json", ax(Formula::atom("a")))).code, 0);
    Net flat = flat_rule(ax(Formula::atom("a")), 0);
    Outcome r = run("validate " + put("flat.json", flat));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find(flat.edges[flat.conclusions[0]].name), std::string::npos);
    r = run("validate " + put_text("bad.json", "{\"edges\": [,]}"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("byte"), std::string::npos);
    EXPECT_EQ(run("validate " + (dir / "missing.json").string()).code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, Check)
{
    EXPECT_EQ(run("check --criterion dr " + put("ax.json", ax(Formula::atom("a")))).code, 0);
    EXPECT_EQ(run("check --criterion proofnet " + put("p.json", fixtures::paragraph_in())).code, 1);
    Net loop = load_net(save_net(par_rule(ax(Formula::atom("X")), 0, 1)));
    loop.links.back().kind = LinkKind::tensor;
    loop.edges.back().label = EdgeLabel::plain(parse_formula("(X^ * X)"));
    Outcome r = run("check --criterion dr " + put("loop.json", loop));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("\"cycle\""), std::string::npos);
    EXPECT_EQ(run("check --brute " + put("loop2.json", loop)).code, 1);
}

TEST_F(Cli, Index)
{
    std::string shift = put("shift.json", fixtures::shift_left());
    EXPECT_EQ(run("index --flavor exponential " + shift).code, 0);
    Outcome r = run("index --flavor plain --strong " + shift);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("\"balance\""), std::string::npos);
    r = run("index --flavor plain " + put("ax.json", ax(Formula::atom("a"))));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find(R"("assignment":{"e0":0,"e1":0})"), std::string::npos);
}

TEST_F(Cli, L3)
{
    Outcome r = run("l3 --method all " + put("d.json", fixtures::dereliction()));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find(R"("indexing":false,"geometric":false)"), std::string::npos);
    EXPECT_NE(r.out.find(R"("interactive":false)"), std::string::npos);
    EXPECT_EQ(run("l3 --method all " + put("s.json", fixtures::shift_left())).code, 0);

    std::string cut = put("cut.json", fixtures::not_l3_until_normalized());
    EXPECT_EQ(run("l3 --method indexing " + cut).code, 1);
    r = run("l3 --method interactive " + cut);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("normalize"), std::string::npos);
    std::string nf = (dir / "nf.json").string();
    ASSERT_EQ(run("normalize " + cut + " > " + nf).code, 0);
    EXPECT_EQ(run("l3 --method all " + nf).code, 0);
}

TEST_F(Cli, Normalize)
{
    Net free = fixtures::dereliction();
    EXPECT_EQ(run("normalize " + put("free.json", free)).out, save_net(free) + "\n");

    std::string cut = put("cut.json", fixtures::not_l3_until_normalized());
    Outcome lo = run("normalize --strategy lo " + cut);
    Outcome in = run("normalize --strategy in " + cut);
    Outcome lv = run("normalize --strategy level --trace " + (dir / "t.json").string() + " " + cut);
    ASSERT_EQ(lo.code, 0);
    EXPECT_TRUE(nets_equal(load_net(lo.out), load_net(in.out)));
    EXPECT_TRUE(nets_equal(load_net(lo.out), load_net(lv.out)));
    EXPECT_TRUE(nets_equal(load_net(lo.out), normalize(fixtures::not_l3_until_normalized()).net));
    EXPECT_TRUE(fs::file_size(dir / "t.json") > 10);

    Outcome noax = run("normalize --no-axiom " + cut);
    EXPECT_EQ(noax.code, 0);
    EXPECT_EQ(run("normalize " + cut, "STRATNET_BUDGET=1").code, 3);
}

TEST_F(Cli, Gen)
{
    Outcome a = run("gen --seed 5 --size 12 --cut-bias 0.3 --paragraph-bias 0.2 --exponential-bias 0.4 --box-bias 0.3");
    Outcome b = run("gen --seed 5 --size 12 --cut-bias 0.3 --paragraph-bias 0.2 --exponential-bias 0.4 --box-bias 0.3");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(load_net(run("gen --size 0").out).empty());
    EXPECT_EQ(run("gen --cut-bias 2").code, 2);
}

TEST_F(Cli, Test)
{
    std::string id = put("id.json", parr_closure(ax(Formula::atom("Z"))));
    EXPECT_EQ(run("test " + id).code, 0);
    Outcome r = run("test " + put("d.json", fixtures::dereliction()));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find(R"("pass":false,"swapped_sites":1)"), std::string::npos);
    EXPECT_EQ(run("test --level 0 " + id).code, 0);
    r = run("test " + put("two.json", ax(Formula::atom("Z"))));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("joined"), std::string::npos);
    EXPECT_EQ(run("test " + put("cut.json", fixtures::not_l3_until_normalized())).code, 2);
}

TEST_F(Cli, DirectoriesAndFormatting)
{
    fs::create_directories(dir / "corpus");
    put("corpus/a.json", fixtures::shift_left());
    put("corpus/b.json", fixtures::dereliction());
    Outcome r = run("l3 --jobs 2 " + (dir / "corpus").string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find(R"("file":"a.json","exit":0)"), std::string::npos);
    EXPECT_NE(r.out.find(R"("file":"b.json","exit":1)"), std::string::npos);

    std::string d = put("d.json", fixtures::dereliction());
    EXPECT_NE(run("check --pretty " + d).out.find("\n  \"criterion\""), std::string::npos);
    EXPECT_EQ(run("normalize --dot " + d).out.rfind("graph", 0), 0u);
}
