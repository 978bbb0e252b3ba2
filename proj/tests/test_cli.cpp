#include "rudvalis/run_report.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

using namespace rudvalis;

namespace {

struct CliRun {
    int status;
    std::string out;
};

CliRun run(const std::string& args) {
    std::string cmd = std::string(RUDVALIS_CLI) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

nlohmann::json run_json(const std::string& args, int want_status = 0) {
    CliRun r = run(args);
    EXPECT_EQ(r.status, want_status) << args;
    return nlohmann::json::parse(r.out);
}

} // namespace

TEST(Cli, CensusCayley) {
    auto j = run_json("census cayley");
    EXPECT_EQ(j["command"], "census cayley");
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["result"]["involutions"], 63);
    EXPECT_EQ(j["result"]["cube_root_pairs"], 28);
    EXPECT_EQ(j["result"]["lines"], 315);
    EXPECT_EQ(j["result"]["rings"], 63);
    EXPECT_EQ(j["data_version"], data_version());
    for (const auto& c : j["checks"]) EXPECT_EQ(c["status"], "pass") << c["name"];
}

TEST(Cli, Deterministic) {
    auto a = run_json("codes info"), b = run_json("codes info");
    a.erase("timing_ms");
    b.erase("timing_ms");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a["result"]["dim"], 7);
    EXPECT_EQ(a["result"]["dual_dim"], 21);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("--no-such-flag").status, 2);
    EXPECT_EQ(run("census").status, 2);
    EXPECT_EQ(run("fock check --vpm").status, 2);
    EXPECT_EQ(run("orbits enumerate --weight 12").status, 2);
    EXPECT_EQ(run("series mt --class 99Z --qmax 1").status, 2);
    EXPECT_EQ(run("series character --qmax x").status, 2);
    EXPECT_EQ(run("--format xml codes info").status, 2);
    EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, SeriesCharacterCsv) {
    CliRun r = run("--format csv series character --qmax 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("p,q_num,q_den,re_num,re_den,im_num,im_den\n", 0), 0u);
    EXPECT_NE(r.out.find("\n0,-1,6,784,1,0,1\n"), std::string::npos);
}

TEST(Cli, SeriesCharacterJson) {
    auto j = run_json("series character --qmax 3");
    bool found = false;
    for (const auto& t : j["result"]["terms"])
        if (t["p"] == 0 && t["q_num"] == -1 && t["q_den"] == 6) found = t["re_num"] == 784;
    EXPECT_TRUE(found);
}

TEST(Cli, FockCheck) {
    auto j = run_json("fock check --n 2 --dmax 3");
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, MissingDataDirectory) {
    EXPECT_EQ(run("--data /nonexistent codes info").status, 1);
}

TEST(RunReportFormat, EmptyAndCsv) {
    RunReport rr;
    rr.command = "x";
    rr.data_version = data_version();
    EXPECT_TRUE(rr.pass());
    auto j = rr.to_json(false);
    EXPECT_FALSE(j.contains("timing_ms"));
    EXPECT_FALSE(j.contains("result"));
    EXPECT_EQ(nlohmann::json::parse(j.dump()), j);
    Report r;
    r.module = "m";
    r.add("a, b", false, "say \"hi\"");
    rr.add(r, 1.5);
    EXPECT_EQ(rr.exit_code(), 1);
    EXPECT_EQ(checks_to_csv(rr), "name,status,detail\n\"m/a, b\",fail,\"say \"\"hi\"\"\"\n");
    EXPECT_EQ(rr.to_json()["timing_ms"]["m"], 1.5);
}

TEST(RunReportFormat, DataVersionIsStable) {
    std::string v = data_version();
    EXPECT_EQ(v.rfind("sha256:", 0), 0u);
    EXPECT_EQ(v.size(), 7u + 64u);
    EXPECT_EQ(v, data_version());
}
