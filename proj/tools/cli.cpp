#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mui/algebra.hpp"
#include "mui/error.hpp"
#include "mui/essential.hpp"
#include "mui/invariants.hpp"
#include "mui/steenrod.hpp"
#include "mui/verify.hpp"

namespace mui::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Scalar> parse_form(const std::string& text, const PrimeField& field, int n) {
  std::vector<Scalar> form;
  for (const std::string& item : split_list(text)) {
    try {
      form.push_back(field.from_int(std::stoll(item)));
    } catch (const std::logic_error&) {
      throw UsageError("bad form entry '" + item + "'");
    }
  }
  if (static_cast<int>(form.size()) != n) {
    throw UsageError("--form needs " + std::to_string(n) + " entries");
  }
  if (std::all_of(form.begin(), form.end(), [](Scalar c) { return c == 0; })) {
    throw UsageError("--form must be nonzero");
  }
  return form;
}

struct Options {
  std::uint32_t p = 3;
  int n = 2;
  std::uint64_t max_degree = 20;
  bool json = false;
  std::string claims;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mod-p cohomology of elementary abelian p-groups: invariants, Steenrod action, checks"};
  app.name("mui");
  app.require_subcommand(1);
  Options opt;
  app.add_option("--p", opt.p, "Prime")->capture_default_str();
  app.add_option("--n", opt.n, "Rank of V")->capture_default_str();

  // invariant
  auto* invariant = app.add_subcommand("invariant", "Print L, M(s), M_S or a Dickson invariant");
  invariant->fallthrough();
  std::string kind;
  int s = 0, r = -1;
  std::string set_text;
  invariant->add_option("kind", kind, "L | M | Mset | dickson")
      ->required()
      ->check(CLI::IsMember({"L", "M", "Mset", "dickson"}));
  invariant->add_option("--s", s, "Index s for M");
  invariant->add_option("--S", set_text, "Comma-separated subset for Mset");
  invariant->add_option("--r", r, "Index r for dickson");

  // apply
  auto* apply_cmd = app.add_subcommand("apply", "Apply a word in b, P<k> (Sq<k> at p = 2), rightmost first");
  apply_cmd->fallthrough();
  std::string word_text, element_text;
  apply_cmd->add_option("word", word_text)->required();
  apply_cmd->add_option("element", element_text)->required();

  // restrict
  auto* restrict_cmd = app.add_subcommand("restrict", "Restrict to the kernel of a linear form");
  restrict_cmd->fallthrough();
  std::string form_text;
  restrict_cmd->add_option("element", element_text)->required();
  restrict_cmd->add_option("--form", form_text, "Coefficients of the form, e.g. 1,2")->required();

  // ess-basis
  auto* ess_cmd = app.add_subcommand("ess-basis", "Basis of the essential ideal in one degree");
  ess_cmd->fallthrough();
  std::uint64_t degree = 0;
  bool by_rank = false;
  ess_cmd->add_option("--degree", degree)->required();
  ess_cmd->add_flag("--by-rank", by_rank, "Split by exterior rank");

  // decompose
  auto* decompose_cmd = app.add_subcommand("decompose", "Write an essential element over the M_S");
  decompose_cmd->fallthrough();
  decompose_cmd->add_option("element", element_text)->required();

  // closure
  auto* closure_cmd = app.add_subcommand("closure", "Dimensions of the Steenrod-closed ideal generated by an element");
  closure_cmd->fallthrough();
  bool show_basis = false;
  closure_cmd->add_option("element", element_text)->required();
  closure_cmd->add_option("--max-degree", opt.max_degree)->capture_default_str();
  closure_cmd->add_flag("--basis", show_basis, "Also print a basis in each degree");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check identities degreewise up to --max-degree");
  verify_cmd->fallthrough();
  VerifyConfig config;
  std::string out_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool list = false;
  verify_cmd->add_option("--max-degree", opt.max_degree)->capture_default_str();
  verify_cmd->add_option("--claims", opt.claims, "Comma-separated claim ids");
  verify_cmd->add_flag("--json", opt.json, "JSON report");
  verify_cmd->add_option("--out", out_path, "Write the report to a file");
  verify_cmd->add_option("--cases", config.random_cases, "Random cases per property")->capture_default_str();
  verify_cmd->add_option("--samples", config.module_samples, "Random module combinations")->capture_default_str();
  verify_cmd->add_option("--seed", config.seed)->capture_default_str();
  verify_cmd->add_option("--threads", threads)->capture_default_str();
  verify_cmd->add_flag("--list", list, "List claim ids and exit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    VerifyConfig guard;
    guard.p = opt.p;
    guard.n = opt.n;
    guard.max_degree = 0;
    check_resources(guard);
    const Ring ring(opt.p, opt.n);

    if (invariant->parsed()) {
      if (kind == "L") {
        out << to_string(dickson_L(ring)) << "\n";
      } else if (kind == "M") {
        if (s < 1 || s > opt.n) throw UsageError("--s must be in 1.." + std::to_string(opt.n));
        out << to_string(mui_invariant(ring, s)) << "\n";
      } else if (kind == "Mset") {
        if (invariant->count("--S") == 0) throw UsageError("Mset needs --S");
        out << to_string(mui_invariant(ring, parse_index_set(set_text, opt.n))) << "\n";
      } else {
        if (r < 0 || r >= opt.n) throw UsageError("--r must be in 0.." + std::to_string(opt.n - 1));
        out << to_string(dickson_invariant(ring, r)) << "\n";
      }
    } else if (apply_cmd->parsed()) {
      const SteenrodWord word = parse_word(word_text, ring.field());
      out << to_string(apply_word(word, parse_element(ring, element_text))) << "\n";
    } else if (restrict_cmd->parsed()) {
      const auto subgroup = MaximalSubgroup::standard(ring.field(), parse_form(form_text, ring.field(), opt.n));
      out << to_string(restrict(parse_element(ring, element_text), subgroup)) << "\n";
    } else if (ess_cmd->parsed()) {
      VerifyConfig c = guard;
      c.max_degree = degree;
      check_resources(c);
      const EssentialPiece piece = ess_basis(ring, degree);
      out << "# degree " << degree << ": dim " << piece.total.rank() << "\n";
      if (by_rank) {
        for (std::size_t k = 0; k < piece.by_rank.size(); ++k) {
          out << "# rank " << k << ": dim " << piece.by_rank[k].rank() << "\n";
          for (const Element& y : piece.by_rank[k].elements()) out << to_string(y) << "\n";
        }
      } else {
        for (const Element& y : piece.total.elements()) out << to_string(y) << "\n";
      }
    } else if (decompose_cmd->parsed()) {
      const Element y = parse_element(ring, element_text);
      for (const auto& [S, f] : decompose(y)) {
        if (!f.is_zero()) out << "M" << to_string(S) << ": " << to_string(f) << "\n";
      }
    } else if (closure_cmd->parsed()) {
      VerifyConfig c = guard;
      c.max_degree = opt.max_degree;
      check_resources(c);
      const auto closure = steenrod_closure(parse_element(ring, element_text), opt.max_degree);
      for (std::size_t d = 0; d < closure.size(); ++d) {
        out << d << ": " << closure[d].rank() << "\n";
        if (show_basis) {
          for (const Element& y : closure[d].elements()) out << "  " << to_string(y) << "\n";
        }
      }
    } else if (verify_cmd->parsed()) {
      if (list) {
        for (const auto& id : applicable_claims(opt.p)) out << id << "\n";
        return kOk;
      }
      config.p = opt.p;
      config.n = opt.n;
      config.max_degree = opt.max_degree;
      const auto reports = verify_all(config, split_list(opt.claims), threads);
      const std::string text = opt.json ? to_json(reports) + "\n" : to_text(reports);
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream file(out_path);
        if (!file) throw UsageError("cannot write " + out_path);
        file << text;
        out << to_text(reports);
      }
      const bool all_pass =
          std::all_of(reports.begin(), reports.end(), [](const auto& rep) { return rep.passed; });
      return all_pass ? kOk : kVerificationFailed;
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "rejected: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMath;
  }
}

}  // namespace mui::cli
