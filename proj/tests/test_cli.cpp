#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "regvar_cli/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = regvar::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(REGVAR_TEST_DATA_DIR) + "/" + name; }

double as_number(const std::string& s) { return std::stod(s); }

class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    setenv(name, value, 1);
  }
  ~EnvGuard() {
    if (old_.empty()) {
      unsetenv(name_);
    } else {
      setenv(name_, old_.c_str(), 1);
    }
  }

 private:
  const char* name_;
  std::string old_;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("group commands") {
  CHECK(run({"group", "circle", "--rho", "1", "1", "1"}).out == "3\n");
  CHECK(as_number(run({"group", "norm", "--rho", "inf", "2.718281828459045"}).out) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(run({"group", "inverse", "--rho", "inf", "4"}).out == "0.25\n");
  CHECK(run({"group", "power", "--rho", "0", "0.25", "4"}).out == "1\n");
  CHECK(run({"group", "leq", "--rho", "1", "0.1", "0.2"}).out == "true\n");
  CHECK(run({"group", "circle", "--", "-2", "5"}).out == "3\n");
  const auto off = run({"group", "circle", "--rho", "2", "--", "-0.5", "0.1"});
  CHECK(off.code == 2);
  CHECK(off.out.empty());
  CHECK(off.err.find("G_2") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"group"}).code == 1);
  CHECK(run({"group", "circle", "--rho", "1", "1"}).code == 1);
  CHECK(run({"group", "circle", "--rho", "abc", "1", "1"}).code == 1);
  CHECK(run({"group", "power", "--rho", "1", "0.1", "1.5"}).code == 1);
  CHECK(run({"kernel", "eval", "--rho", "1"}).code == 1);
  CHECK(run({"estimate", "kernel", "--mode", "nonsense", "--f", "one", "--t", "2"}).code == 1);
  CHECK(run({"subadd", "check", "--S", "no-such-function", "--lo", "0", "--hi", "1"}).code == 1);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Subcommands") != std::string::npos);
}

TEST_CASE("kernel commands") {
  CHECK(run({"kernel", "eval", "--rho", "1", "--sigma", "1", "--kappa", "2", "--t", "1"}).out == "3\n");
  CHECK(run({"kernel", "eval", "--rho", "0", "--sigma", "0", "--kappa", "2", "--t", "1,2,3"}).out == "2\n4\n6\n");
  CHECK(as_number(run({"kernel", "inverse", "--rho", "1", "--sigma", "1", "--kappa", "2", "--z", "3"}).out) ==
        doctest::Approx(1.0));
  CHECK(as_number(run({"kernel", "goldie-G", "--rho", "1", "--gamma", "2", "--u", "1"}).out) == doctest::Approx(0.375));
  CHECK(as_number(run({"kernel", "goldie-G", "--rho", "1", "--gamma", "2", "--u", "1", "--numeric"}).out) ==
        doctest::Approx(0.375).epsilon(1e-9));
  const auto res = run({"kernel", "residuals", "--rho", "1", "--sigma", "0.5", "--kappa", "1.5", "--u", "0.3", "--v", "2"});
  CHECK(res.code == 0);
  CHECK(res.out.find("bg=") == 0);
  CHECK(run({"kernel", "residuals", "--rho", "1", "--sigma", "inf", "--kappa", "1", "--u", "1", "--v", "1"}).code == 1);
}

TEST_CASE("transform commands") {
  CHECK(as_number(run({"transform", "haar", "--rho", "inf", "--lo", "1", "--hi", "2.718281828459045"}).out) ==
        doctest::Approx(1.0));
  const auto mel = run({"transform", "mellin", "--rho", "1", "--z", "0", "--f", data("t_exp_minus_t.csv")});
  CHECK(mel.code == 0);
  CHECK(std::fabs(as_number(mel.out) - 1.0) < 1e-4);
  const auto mel2 = run({"transform", "mellin", "--rho", "inf", "--z", "-1", "--f", data("t_exp_minus_t.csv")});
  CHECK(std::fabs(as_number(mel2.out) - 1.0) < 1e-4);
  const auto four = run({"transform", "fourier", "--rho", "0", "--f", "gauss", "--gamma", "0,1"});
  CHECK(four.out.find("gamma,re,im,converged\n0,1,") == 0);
  const auto integ = run({"transform", "integrate", "--rho", "1", "--f", "one", "--lo", "0", "--hi", "1"});
  CHECK(as_number(integ.out) == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(run({"transform", "integrate", "--rho", "1", "--f", "one", "--lo", "0"}).code == 1);
  const auto chr = run({"transform", "character", "--rho", "inf", "--gamma", "0", "--u", "3"});
  CHECK(chr.out == "1,0\n");
  const auto beu = run({"transform", "beurling", "--F", "gauss", "--H", "const:2", "--phi", "sqrt", "--x", "100"});
  CHECK(as_number(beu.out) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("estimate commands") {
  const auto sq = run({"estimate", "kernel", "--mode", "karamata", "--f", data("square.csv"), "--t", "2,3"});
  CHECK(sq.code == 0);
  CHECK(sq.out == "t,K,converged\n2,4,true\n3,9,true\n");
  CHECK(sq.err.find("kappa=2 ") == 0);
  const auto c5 = run({"estimate", "kernel", "--f", data("constant5.csv"), "--t", "2,3"});
  CHECK(c5.out == "t,K,converged\n2,1,true\n3,1,true\n");
  CHECK(c5.err.find("kappa=0 ") == 0);
  CHECK(run({"estimate", "two-point", "--l1", "2", "--g1", "8", "--l2", "3", "--g2", "27"}).out == "rho=3 consistent\n");
  const auto rat = run({"estimate", "two-point", "--l1", "2", "--g1", "8", "--l2", "4", "--g2", "64"});
  CHECK(rat.err.find("rational") != std::string::npos);
  CHECK(run({"estimate", "two-point", "--l1", "1", "--g1", "8", "--l2", "4", "--g2", "64"}).code == 2);
  const auto eta = run({"estimate", "eta", "--phi", data("identity.csv")});
  CHECK(eta.out == "rho_hat=1\nconverged=true\n");
  const auto beu = run({"estimate", "kernel", "--mode", "beurling", "--f", "square", "--phi", "identity", "--t", "1"});
  CHECK(beu.out == "t,K,converged\n1,4,true\n");
  CHECK(beu.err.find("rho_hat=1") != std::string::npos);
  CHECK(run({"estimate", "kernel", "--mode", "general", "--f", "square", "--t", "1"}).code == 1);
}

TEST_CASE("non-convergence is data unless --strict") {
  const std::vector<std::string> base = {"estimate", "kernel", "--f", "log", "--t", "2", "--max-steps", "4"};
  const auto lax = run(base);
  CHECK(lax.code == 0);
  CHECK(lax.out.find(",false") != std::string::npos);
  auto strict = base;
  strict.push_back("--strict");
  CHECK(run(strict).code == 3);
}

TEST_CASE("tolerance from the environment") {
  const std::vector<std::string> args = {"estimate", "two-point", "--l1", "2", "--g1", "8", "--l2", "3", "--g2", "81"};
  CHECK(run(args).out.find("inconsistent") != std::string::npos);
  {
    EnvGuard env("REGVAR_TOL", "2");
    CHECK(run(args).out == "rho=3.5 consistent\n");
    auto strict_tol = args;
    strict_tol.insert(strict_tol.end(), {"--tol", "1e-9"});
    CHECK(run(strict_tol).out.find("inconsistent") != std::string::npos);
  }
  {
    EnvGuard env("REGVAR_TOL", "not-a-number");
    CHECK(run(args).code == 1);
  }
}

TEST_CASE("malformed CSV input exits 2 with a line number") {
  const std::string path = "regvar_cli_bad.csv";
  {
    std::ofstream out(path);
    out << "x,fx\n1,2\n2,oops\n";
  }
  const auto r = run({"estimate", "kernel", "--f", path, "--t", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("beck and subadd commands") {
  CHECK(run({"beck", "partition", "--rho", "1", "--delta", "0.1", "--u", "0.21"}).out == "0\n0.1\n0.21\n0.331\n");
  const auto sum = run({"beck", "sum", "--rho", "1", "--delta", "0.01", "--u", "1", "--g", "one"});
  CHECK(std::fabs(as_number(sum.out) - std::log(2.0)) < 0.01);
  CHECK(as_number(run({"beck", "goldie", "--rho", "1", "--delta", "0.1", "--i", "5", "--K", "0.7"}).out) ==
        doctest::Approx(3.5));
  CHECK(run({"beck", "partition", "--rho", "inf", "--delta", "0.1", "--u", "1"}).code == 2);

  const auto sq = run({"subadd", "check", "--S", "square", "--lo", "0", "--hi", "2", "--n", "21"});
  CHECK(sq.out.find("holds=false\nworst_violation=2\nworst_pair=1,1\n") == 0);
  const auto k = run({"subadd", "check", "--S", "kernel:0.7", "--rho", "1", "--sigma", "inf", "--lo", "-0.5", "--hi", "2"});
  CHECK(k.out.find("holds=true") == 0);
  const auto fs = run({"subadd", "check", "--S", "fstar:-1", "--rho", "1", "--lo", "0", "--hi", "5"});
  CHECK(fs.out.find("holds=false") == 0);
  CHECK(run({"subadd", "hs", "--S", "const:1"}).out == "limsup=1\npasses=false\n");
  CHECK(run({"subadd", "bounded", "--S", "identity", "--kappa", "2", "--t", "1,2,3"}).out.find("holds=true") == 0);
  const auto p5 = run({"subadd", "prop5", "--S", "sqrt", "--a", "1", "--b", "4", "--delta", "0.5", "--M", "1.224744871391589"});
  CHECK(p5.out.find("holds=true\npremise_ok=true") == 0);
  CHECK(run({"subadd", "check", "--S", "sqrt", "--lo", "0", "--hi", "1", "--geometric"}).code == 1);
}

TEST_CASE("cocycle commands") {
  for (const char* kind : {"karamata", "beurling", "general"}) {
    std::vector<std::string> args = {"cocycle", kind, "--f", "pow:1.5", "--s", "0.5", "--t", "2", "--x", "7"};
    if (std::string(kind) != "karamata") args.insert(args.end(), {"--phi", "sqrt"});
    if (std::string(kind) == "general") args.insert(args.end(), {"--h", "identity"});
    const auto r = run(args);
    CAPTURE(kind);
    CHECK(r.code == 0);
    CHECK(std::fabs(as_number(r.out)) < 1e-12);
  }
}

TEST_CASE("repeated invocations are byte-identical") {
  const std::vector<std::vector<std::string>> cmds = {
      {"transform", "fourier", "--rho", "1", "--f", data("t_exp_minus_t.csv"), "--gamma", "0,1,2,5"},
      {"estimate", "kernel", "--f", data("square.csv"), "--t", "0.5,2,3"},
      {"subadd", "check", "--S", "sqrt", "--lo", "0", "--hi", "10"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}

TEST_CASE("number formatting") {
  CHECK(regvar::cli::format_number(-0.0) == "0");
  CHECK(regvar::cli::format_number(0.1) == "0.1");
  CHECK(regvar::cli::format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(regvar::cli::format_number(std::nan("")) == "nan");
}

}  // TEST_SUITE
