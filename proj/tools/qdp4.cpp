// qdp4 command-line front end; JSON in, JSON out.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "qdp4/qdp4.h"

namespace {

struct Failure {
  int code;
};

std::string slurp(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "qdp4: cannot read " << path << "\n";
      throw Failure{QDP4_PARSE};
    }
    ss << in.rdbuf();
  }
  return ss.str();
}

int check(qdp4_status s) {
  if (s != QDP4_OK && s != QDP4_FALSE) {
    std::cerr << "qdp4: " << qdp4_last_error() << "\n";
    throw Failure{s};
  }
  return s;
}

using PencilPtr = std::unique_ptr<qdp4_pencil, decltype(&qdp4_pencil_free)>;

PencilPtr load(const std::string& path) {
  qdp4_pencil* p = nullptr;
  check(qdp4_pencil_from_json(slurp(path).c_str(), &p));
  return PencilPtr(p, qdp4_pencil_free);
}

int print(qdp4_status s, char*& text) {
  check(s);
  std::cout << text << "\n";
  qdp4_string_free(text);
  text = nullptr;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of quartic del Pezzo surfaces given by pencils of quadrics"};
  app.set_version_flag("--version", std::string(qdp4_version()));
  app.require_subcommand(1);

  std::string file, file2;
  unsigned ext = 1;
  std::string lambda, mu, field;
  std::vector<std::string> suites;
  bool json_out = false;

  auto* analyze = app.add_subcommand("analyze", "Full invariant report for a pencil");
  analyze->add_option("pencil", file, "Pencil JSON file, or - for stdin")->required();

  auto* iso = app.add_subcommand("iso", "Decide isomorphism of two pencils (exit 0 yes, 1 no)");
  iso->add_option("a", file, "First pencil")->required();
  iso->add_option("b", file2, "Second pencil")->required();

  auto* aut = app.add_subcommand("aut", "Automorphisms of the point configuration and the surface");
  aut->add_option("pencil", file)->required();

  auto* minimal = app.add_subcommand("minimal", "Galois signature and minimality over a finite field");
  minimal->add_option("pencil", file)->required();

  auto* count = app.add_subcommand("count-points", "Count points over a finite extension");
  count->add_option("pencil", file)->required();
  count->add_option("--ext", ext, "Extension degree k")->capture_default_str();

  auto* recon = app.add_subcommand("reconstruct", "Diagonal pencil with the given normal form");
  recon->add_option("--lambda", lambda)->required();
  recon->add_option("--mu", mu)->required();
  recon->add_option("--field", field, "Field JSON (default: rationals)");

  auto* kgroups = app.add_subcommand("kgroups", "K-theory ranks");
  kgroups->require_subcommand(1);
  auto* ranks = kgroups->add_subcommand("ranks", "Ranks for a signature, signed permutation or pencil");
  ranks->add_option("input", file)->required();

  auto* groupoid = app.add_subcommand("groupoid", "Finite groupoid checks");
  groupoid->require_subcommand(1);
  auto* verify = groupoid->add_subcommand("verify", "Heavy separability of a functor (exit 1 if it fails)");
  verify->add_option("input", file)->required();

  auto* selftest = app.add_subcommand("selftest", "Run the exhaustive invariant suites");
  selftest->add_option("--suite", suites, "Run only these suites");
  selftest->add_flag("--json", json_out, "Print the JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : QDP4_PARSE;
  }

  try {
    char* out = nullptr;
    if (*analyze) {
      auto p = load(file);
      return print(qdp4_analyze(p.get(), &out), out);
    }
    if (*iso) {
      auto a = load(file), b = load(file2);
      return print(qdp4_isomorphic(a.get(), b.get(), &out), out);
    }
    if (*aut) {
      auto p = load(file);
      return print(qdp4_aut(p.get(), &out), out);
    }
    if (*minimal) {
      auto p = load(file);
      return print(qdp4_minimal(p.get(), &out), out);
    }
    if (*count) {
      auto p = load(file);
      return print(qdp4_count_points(p.get(), ext, &out), out);
    }
    if (*recon) {
      qdp4_pencil* p = nullptr;
      check(qdp4_reconstruct(field.empty() ? nullptr : field.c_str(), lambda.c_str(), mu.c_str(), &p));
      PencilPtr owned(p, qdp4_pencil_free);
      return print(qdp4_pencil_to_json(p, &out), out);
    }
    if (*ranks) return print(qdp4_kgroups_ranks(slurp(file).c_str(), &out), out);
    if (*verify) return print(qdp4_groupoid_verify(slurp(file).c_str(), &out), out);
    if (*selftest) {
      std::string joined;
      for (const auto& s : suites) joined += (joined.empty() ? "" : ",") + s;
      const int rc = check(qdp4_selftest(joined.c_str(), &out));
      if (json_out) {
        std::cout << out << "\n";
      } else {
        const auto j = nlohmann::json::parse(out);
        for (const auto& s : j["suites"]) {
          std::cout << (s["passed"].get<bool>() ? "[PASS] " : "[FAIL] ") << s["name"].get<std::string>()
                    << "  checks=" << s["checks"].get<std::uint64_t>()
                    << " failures=" << s["failures"].get<std::uint64_t>();
          if (!s["detail"].get<std::string>().empty()) std::cout << "  " << s["detail"].get<std::string>();
          std::cout << "\n";
        }
      }
      qdp4_string_free(out);
      return rc;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
