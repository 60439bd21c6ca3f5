#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "endsym/factorization.hpp"
#include "endsym/random_homeo.hpp"
#include "endsym/report.hpp"

namespace endsym::cli {

namespace {

struct Failure {
  int code;
  std::string message;
};

Descriptor read_descriptor(const std::string& text) { return canonicalize(parse_descriptor(text)); }

Genus parse_genus(const std::string& s) {
  if (s == "inf") return Genus::inf();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Failure{usage_error, "genus must be a non-negative integer or 'inf'"};
  try {
    return Genus::finite(std::stoull(s));
  } catch (const std::out_of_range&) {
    throw Failure{usage_error, "genus is too large"};
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{domain_error, "cannot read " + path};
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Failure{domain_error, path + ": " + e.what()};
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw Failure{domain_error, "cannot write " + path};
}

// A permutation table in any accepted form, or a full expression.
Json homeo_input(const AddressModel& m, const Json& j) {
  if (j.is_object() && j.contains("op") && j.at("op") != "perm") return j;
  return perm_expr(m, parse_perm_table(m, j));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"symbolic ends-space calculus", "endsym"};
  app.require_subcommand(1);
  std::string descriptor, genus, format = "text", homeo_file, out_file, cert_file;
  std::size_t depth = kDefaultDepth;
  std::uint64_t seed = 0;
  bool random = false;
  int window = 4;

  auto* classify = app.add_subcommand("classify", "classify a surface by genus and ends");
  classify->add_option("--genus", genus, "genus: a number or inf")->required();
  classify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  classify->add_option("descriptor", descriptor)->required();

  auto* rank = app.add_subcommand("rank", "Cantor-Bendixson rank");
  rank->add_option("descriptor", descriptor)->required();

  auto* order = app.add_subcommand("order", "class poset of ends");
  order->add_option("--format", format)->check(CLI::IsMember({"text", "dot"}));
  order->add_option("descriptor", descriptor)->required();

  auto* selfsim = app.add_subcommand("selfsim", "self-similarity of the ends space");
  selfsim->add_option("descriptor", descriptor)->required();

  auto* standard = app.add_subcommand("standard-form", "chain decomposition of a uniformly self-similar space");
  standard->add_option("--window", window, "largest |i| shown")->check(CLI::Range(0, 16));
  standard->add_option("descriptor", descriptor)->required();

  auto* factor = app.add_subcommand("factor", "factor a homeomorphism into involutions");
  factor->add_option("descriptor", descriptor)->required();
  auto* homeo_opt = factor->add_option("--homeo", homeo_file, "permutation table (JSON)");
  auto* random_opt = factor->add_flag("--random", random, "use a random permutation");
  homeo_opt->excludes(random_opt);
  factor->add_option("--seed", seed, "seed for --random");
  factor->add_option("--depth", depth)->check(CLI::Range(1, 16));
  factor->add_option("--out", out_file, "certificate path");

  auto* verify = app.add_subcommand("verify", "re-verify a certificate");
  verify->add_option("certificate", cert_file)->required();
  auto* verify_depth = verify->add_option("--depth", depth)->check(CLI::Range(1, 16));

  auto* emit = app.add_subcommand("emit-dot", "descriptor tree as DOT");
  emit->add_option("descriptor", descriptor)->required();

  std::vector<const char*> argv{"endsym"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "E:" << usage_error << ": " << e.what() << "\n";
    return usage_error;
  }

  try {
    if (*classify) {
      const auto r = classify_surface({parse_genus(genus), parse_descriptor(descriptor)});
      if (format == "json")
        out << classify_json(r).dump(2) << "\n";
      else
        out << classify_text(r);
    } else if (*rank) {
      out << rank_text(cb_analysis(read_descriptor(descriptor)));
    } else if (*order) {
      const auto p = end_classes(read_descriptor(descriptor));
      out << (format == "dot" ? order_dot(p) : order_text(p));
    } else if (*selfsim) {
      out << selfsim_label(read_descriptor(descriptor)) << "\n";
    } else if (*standard) {
      out << standard_form_text(*StandardForm::build(read_descriptor(descriptor)), window);
    } else if (*factor) {
      if (homeo_file.empty() && !random) throw Failure{usage_error, "factor needs --homeo or --random"};
      const auto sf = StandardForm::build(read_descriptor(descriptor));
      const AddressModel& m = *sf->model();
      const Json g = random ? perm_expr(m, random_cell_permutation(m, seed))
                            : homeo_input(m, read_json_file(homeo_file));
      const Certificate cert = factor_into_involutions(sf, g, depth);
      const std::string text = to_json(cert).dump(2) + "\n";
      if (out_file.empty()) {
        out << text;
      } else {
        write_file(out_file, text);
        out << "verdict: " << (cert.pass ? "pass" : "fail") << "\ncounts: " << cert.counts.commutators << " "
            << cert.counts.translations << " " << cert.counts.involutions << "\n";
      }
      if (!cert.pass) {
        err << "E:" << verification_failure << ": certificate fails at depth " << depth
            << (cert.disagreement ? " near cell " + *cert.disagreement : std::string()) << "\n";
        return verification_failure;
      }
    } else if (*verify) {
      const Certificate cert = certificate_from_json(read_json_file(cert_file));
      const std::size_t d = verify_depth->count() ? depth : cert.verified_depth;
      const Verification v = verify_certificate(cert, d);
      if (!v.pass) {
        out << "fail\n";
        err << "E:" << verification_failure << ": " << v.reason
            << (v.disagreement ? " near cell " + *v.disagreement : std::string()) << "\n";
        return verification_failure;
      }
      out << "pass at depth " << d << "\n";
    } else if (*emit) {
      out << descriptor_dot(read_descriptor(descriptor));
    }
  } catch (const Failure& f) {
    err << "E:" << f.code << ": " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    err << "E:" << domain_error << ": " << e.what() << "\n";
    return domain_error;
  }
  return ok;
}

}  // namespace endsym::cli
