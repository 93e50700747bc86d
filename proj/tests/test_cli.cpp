#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using std::string;

namespace {

struct CliResult {
  int exit_code;
  string out;
};

CliResult run(const string& args) {
  string out_path = "cli_test_out.txt";
  string cmd = string(SCE_BIN) + " " + args + " >" + out_path + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::remove(out_path.c_str());
  return {rc < 0 ? rc : WEXITSTATUS(rc), buf.str()};
}

const string kGolden = GOLDEN_DIR;

}  // namespace

TEST_CASE("malformed input exits with the input-error code") {
  std::ofstream bad("cli_bad.sce");
  bad << "sce 1\nkind index\nmessage a alphabet two\n";
  bad.close();
  CHECK(run("map cli_bad.sce --direction i2n").exit_code == 2);
  CHECK(run("evaluate cli_bad.sce").exit_code == 2);
  std::remove("cli_bad.sce");
  CHECK(run("map no_such_file.sce --direction i2n").exit_code == 2);
}

TEST_CASE("mapping directions enforce the input kind") {
  CHECK(run("map " + kGolden + "/fig1a.sce --direction n2i").exit_code == 2);
  CHECK(run("map " + kGolden + "/fig2a.sce --direction i2n").exit_code == 2);
  // mapping a network that was never augmented is refused
  CHECK(run("map " + kGolden + "/fig2a.sce --direction n2i").exit_code == 2);
}

TEST_CASE("evaluate reports exact error and leakage") {
  CliResult r = run("evaluate " + kGolden + "/fig2a.sce");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("error 0\n") != string::npos);
  CHECK(r.out.find("leakage r1 0.000000000") != string::npos);
  CHECK(r.out.find("leakage r2 0.000000000") != string::npos);

  // feasibility at the boundary is inclusive; a failed check exits 1
  CHECK(run("evaluate " + kGolden + "/fig2a.sce --epsilon 0 --eta 0")
            .exit_code == 0);

  // a leaky plain broadcast fails the zero-leakage check with exit 1
  std::ofstream leaky("cli_leaky.sce");
  leaky << "sce 1\nkind index\nmessage 1 alphabet 2\n"
           "receiver t wants 1 has -\neavesdropper r targets 1 side -\n"
           "code\nbits 1\nkey 0\nencoder 0 1\ndecoder t 0 1\nend\n";
  leaky.close();
  CliResult lr = run("evaluate cli_leaky.sce --epsilon 0 --eta 0");
  CHECK(lr.exit_code == 1);
  CHECK(lr.out.find("feasible false") != string::npos);
  std::remove("cli_leaky.sce");
}

TEST_CASE("verification runs are deterministic and seed-dependent") {
  CliResult a = run("verify thm1_fwd --trials 10 --seed 7");
  CliResult b = run("verify thm1_fwd --trials 10 --seed 7");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("PASS") != string::npos);
}

TEST_CASE("hypothesis violations are input errors") {
  CHECK(run("verify thm2_p2b --epsilon 0.6 --trials 2").exit_code == 2);
  CHECK(run("verify thm9 --trials 2").exit_code == 2);
}

TEST_CASE("bounds calculator") {
  CliResult r = run(
      "bounds --epsilon 0 --eta 0 --eavesdroppers 1 --nhat 4 "
      "--log-alphabet 3 --tv 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("zeta 0.000000000") != string::npos);
  CHECK(r.out.find("gamma 0.000000000") != string::npos);
  CHECK(r.out.find("gamma-prime 0.000000000") != string::npos);
  // gamma's hypothesis rejects epsilon beyond one half
  CHECK(run("bounds --epsilon 0.7 --nhat 4 --log-alphabet 3").exit_code == 2);
  CHECK(run("bounds --epsilon 1.5 --nhat 4").exit_code == 2);
}

TEST_CASE("the one-time-pad pipeline runs end to end") {
  // augment -> map -> translate -> rebuild from the selected sigma
  CHECK(run("augment " + kGolden + "/fig2a.sce --output cli_fig2b.sce")
            .exit_code == 0);
  CliResult tr = run(
      "translate cli_fig2b.sce --direction n2i --n 1 --output cli_fig2c.sce");
  CHECK(tr.exit_code == 0);
  CHECK(tr.out.find("report thm2_p1") != string::npos);
  CHECK(tr.out.find("source-error 0") != string::npos);
  CHECK(tr.out.find("target-error 0") != string::npos);
  CHECK(tr.out.find("satisfied true") != string::npos);

  CliResult rb = run(
      "translate cli_fig2c.sce --direction i2n --via cli_fig2b.sce --n 1 "
      "--output cli_rebuilt.sce");
  CHECK(rb.exit_code == 0);
  CHECK(rb.out.find("report thm2_p2a") != string::npos);
  CHECK(rb.out.find("satisfied true") != string::npos);

  CliResult ev = run("evaluate cli_rebuilt.sce --epsilon 0 --eta 0");
  CHECK(ev.exit_code == 0);
  CHECK(ev.out.find("feasible true") != string::npos);

  // out-of-range sigma override
  CHECK(run("translate cli_fig2c.sce --direction i2n --via cli_fig2b.sce "
            "--n 1 --sigma 4")
            .exit_code == 2);

  std::remove("cli_fig2b.sce");
  std::remove("cli_fig2c.sce");
  std::remove("cli_rebuilt.sce");
}

TEST_CASE("theorem 1 translations round-trip through files") {
  // forward: index file with a code onto the mapped network
  std::ofstream f("cli_idx.sce");
  f << "sce 1\nkind index\n"
       "message 1 alphabet 2\nmessage 2 alphabet 2\n"
       "receiver t1 wants 1 has 2\nreceiver t2 wants 2 has 1\n"
       "eavesdropper r targets 1 side -\n"
       "code\nbits 1\nkey 0\n"
       "encoder 0 1 1 0\n"  // broadcast = x1 xor x2
       "decoder t1 0 1 1 0\ndecoder t2 0 1 1 0\n"
       "end\n";
  f.close();
  CliResult fwd =
      run("translate cli_idx.sce --direction i2n --output cli_net.sce");
  CHECK(fwd.exit_code == 0);
  CHECK(fwd.out.find("report thm1_fwd") != string::npos);
  CHECK(fwd.out.find("clause error_equal pass") != string::npos);
  CHECK(fwd.out.find("clause leakage_equal pass") != string::npos);

  CliResult bwd =
      run("translate cli_net.sce --direction n2i --output cli_idx2.sce");
  CHECK(bwd.exit_code == 0);
  CHECK(bwd.out.find("report thm1_bwd") != string::npos);
  CHECK(bwd.out.find("satisfied true") != string::npos);

  // the recovered code evaluates identically to the original
  CliResult e1 = run("evaluate cli_idx.sce");
  CliResult e2 = run("evaluate cli_idx2.sce");
  CHECK(e1.out.substr(e1.out.find("error")) ==
        e2.out.substr(e2.out.find("error")));

  std::remove("cli_idx.sce");
  std::remove("cli_net.sce");
  std::remove("cli_idx2.sce");
}
