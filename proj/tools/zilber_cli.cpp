// zilber: command-line front end over the C interface.
// Exit codes: 0 all certificates pass, 1 some certificate failed, 2 input error, 3 internal error.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zilber/zilber.h"

namespace {

using nlohmann::json;

struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void input_error(const std::string& message) { throw Failure{2, message}; }

void check(zilber_status s) {
  if (s == ZILBER_OK) return;
  static const char* names[] = {"ok", "invalid argument", "validation", "parse", "overflow", "containment", "internal"};
  const int code = static_cast<int>(s);
  const std::string what = std::string(code >= 0 && code <= 6 ? names[code] : "unknown") + ": " + zilber_last_error();
  throw Failure{s == ZILBER_CONTAINMENT || s == ZILBER_INTERNAL ? 3 : 2, what};
}

json take_json(char* s) {
  json j = json::parse(s);
  zilber_string_free(s);
  return j;
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Sset = std::unique_ptr<zilber_sset, Deleter<zilber_sset, zilber_sset_free>>;
using Chain = std::unique_ptr<zilber_chain, Deleter<zilber_chain, zilber_chain_free>>;
using Filt = std::unique_ptr<zilber_filt, Deleter<zilber_filt, zilber_filt_free>>;
using Spectral = std::unique_ptr<zilber_ss, Deleter<zilber_ss, zilber_ss_free>>;

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t max_dim() {
  const char* env = std::getenv("ZILBER_MAX_DIM");
  if (!env || !*env) return 6;
  const std::string s = env;
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 3)
    input_error("ZILBER_MAX_DIM must be a nonnegative integer");
  return std::stoul(s);
}

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) input_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_builtin_name(const std::string& s) {
  return s == "point" || s == "circle" || s == "torus" || s.rfind("simplex:", 0) == 0;
}

// Skeletal dimension of a builtin, used to size default dimension bounds.
std::size_t builtin_dimension(const std::string& s) {
  if (s == "point") return 0;
  if (s == "circle") return 1;
  if (s == "torus") return 2;
  const std::string n = s.substr(8);
  if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos || n.size() > 3)
    input_error("bad simplex dimension in " + s);
  return std::stoul(n);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

class Session {
 public:
  json inputs = json::array();

  // An input argument: a builtin, a file (or - for stdin), or a product A*B*... of those.
  struct Loaded {
    std::string format;  // ssimp, chain, filt
    std::string text;    // document text for files
    std::optional<std::string> builtin;
    std::vector<std::string> factors;
  };

  Loaded load(const std::string& arg) {
    Loaded l;
    const auto parts = split(arg, '*');
    if (parts.size() > 1) {
      for (const auto& p : parts) {
        if (p.empty()) input_error("empty factor in " + arg);
        l.factors.push_back(p);
      }
      l.format = "ssimp";
      return l;
    }
    if (is_builtin_name(arg)) {
      builtin_dimension(arg);
      l.builtin = arg;
      l.format = "ssimp";
      return l;
    }
    l.text = read_source(arg);
    inputs.push_back({{"argument", arg}, {"fnv1a64", fnv1a(l.text)}, {"bytes", l.text.size()}});
    try {
      const json doc = json::parse(l.text);
      if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string())
        input_error(arg + ": document has no \"format\" field");
      l.format = doc["format"];
    } catch (const json::parse_error&) {
      l.format = "unknown";  // the library reports the line and column
    }
    return l;
  }

  // Default dimension bound for a space argument: builtins by their skeletal dimension; files keep their own
  // bound, so they ask for the cap.
  std::size_t natural_dimension(const std::string& arg) {
    const auto parts = split(arg, '*');
    if (parts.size() > 1) {
      std::size_t d = 0;
      for (const auto& p : parts) d += natural_dimension(p);
      return d;
    }
    if (is_builtin_name(arg)) return builtin_dimension(arg);
    return max_dim();
  }

  Sset space(const std::string& arg, std::size_t dim_bound) {
    Loaded l = load(arg);
    return space_from(arg, l, dim_bound);
  }

  Sset space_from(const std::string& arg, const Loaded& l, std::size_t dim_bound) {
    if (dim_bound > max_dim())
      input_error("dimension bound " + std::to_string(dim_bound) + " exceeds ZILBER_MAX_DIM=" +
                  std::to_string(max_dim()));
    if (!l.factors.empty()) {
      Sset acc = space(l.factors[0], dim_bound);
      for (std::size_t i = 1; i < l.factors.size(); ++i) {
        Sset next = space(l.factors[i], dim_bound);
        zilber_sset* out = nullptr;
        check(zilber_sset_product(acc.get(), next.get(), &out));
        acc.reset(out);
      }
      return acc;
    }
    zilber_sset* out = nullptr;
    if (l.builtin) {
      inputs.push_back({{"argument", arg}, {"builtin", *l.builtin}, {"dim_bound", dim_bound},
                        {"fnv1a64", fnv1a("builtin:" + *l.builtin + "@" + std::to_string(dim_bound))}});
      check(zilber_sset_builtin(l.builtin->c_str(), dim_bound, &out));
      return Sset(out);
    }
    if (l.format != "ssimp" && l.format != "unknown") input_error(arg + ": expected an ssimp document, got " + l.format);
    check(zilber_sset_from_json(l.text.c_str(), &out));
    Sset x(out);
    std::size_t d = 0;
    check(zilber_sset_dim_bound(x.get(), &d));
    if (d > max_dim())
      input_error(arg + ": dim_bound " + std::to_string(d) + " exceeds ZILBER_MAX_DIM=" + std::to_string(max_dim()));
    if (d > dim_bound) {
      check(zilber_sset_truncate(x.get(), dim_bound, &out));
      x.reset(out);
    }
    return x;
  }
};

struct Report {
  std::string command;
  json params = json::object();
  json results = json::array();
  bool pass = true;

  void add_certificate(char* text, int ok) {
    results.push_back(take_json(text));
    pass = pass && ok == 1;
  }
  void add_table(const std::string& name, json value) {
    results.push_back({{"table", name}, {"value", std::move(value)}});
  }
};

struct Options {
  bool timing = true;
  std::uint64_t seed = 0;
};

std::optional<std::size_t> opt_dim(long d) {
  if (d < 0) return std::nullopt;
  return static_cast<std::size_t>(d);
}

// ---------------------------------------------------------------- commands

void cmd_homology(Session& s, Report& rep, const std::string& input, long dim) {
  Session::Loaded l = s.load(input);
  Chain c;
  zilber_chain* out = nullptr;
  bool truncated_top = false;
  if (l.format == "chain") {
    check(zilber_chain_from_json(l.text.c_str(), &out));
    c.reset(out);
  } else {
    const std::size_t d = opt_dim(dim).value_or(std::min(s.natural_dimension(input) + 1, max_dim()));
    Sset x = s.space_from(input, l, d);
    check(zilber_chain_normalized(x.get(), &out));
    c.reset(out);
    truncated_top = true;
  }
  char* text = nullptr;
  check(zilber_chain_homology(c.get(), &text));
  json groups = take_json(text);
  if (truncated_top && groups.size() > 1) {
    // The top degree of a truncated object has no boundaries coming in.
    rep.params["omitted_top_degree"] = groups.back()["degree"];
    groups.erase(groups.size() - 1);
  }
  rep.add_table("homology", groups);
}

void cmd_doldkan(Session& s, Report& rep, const std::string& input, long dim) {
  Session::Loaded l = s.load(input);
  char* text = nullptr;
  int ok = 0;
  if (l.format == "chain") {
    zilber_chain* out = nullptr;
    check(zilber_chain_from_json(l.text.c_str(), &out));
    Chain c(out);
    char* doc = nullptr;
    check(zilber_chain_to_json(c.get(), &doc));
    const std::size_t top = take_json(doc)["ranks"].size() - 1;
    const std::size_t d = opt_dim(dim).value_or(std::min(top + 1, max_dim()));
    if (d > max_dim()) input_error("dimension bound exceeds ZILBER_MAX_DIM");
    rep.params["dim_bound"] = d;
    check(zilber_check_doldkan_chain(c.get(), d, &text, &ok));
  } else {
    const std::size_t d = opt_dim(dim).value_or(std::min(s.natural_dimension(input) + 1, max_dim()));
    Sset x = s.space_from(input, l, d);
    check(zilber_check_doldkan_sset(x.get(), &text, &ok));
  }
  rep.add_certificate(text, ok);
}

void cmd_ez(Session& s, Report& rep, const std::string& a, const std::string& b, const std::string& third,
            std::vector<std::string> checks, long dim) {
  if (checks.empty() || std::find(checks.begin(), checks.end(), "all") != checks.end())
    checks = {"chain", "aw", "unital", "symmetry", "homology"};
  std::size_t natural = s.natural_dimension(a) + s.natural_dimension(b);
  if (!third.empty()) natural += s.natural_dimension(third);
  const std::size_t d = opt_dim(dim).value_or(std::min(std::max<std::size_t>(natural, 1), max_dim()));
  rep.params["dim_bound"] = d;
  Sset x = s.space(a, d), y = s.space(b, d);
  for (const auto& k : checks) {
    char* text = nullptr;
    int ok = 0;
    if (k == "associativity") {
      if (third.empty()) input_error("--check associativity needs --third");
      Sset z = s.space(third, d);
      check(zilber_check_ez_associativity(x.get(), y.get(), z.get(), &text, &ok));
    } else {
      check(zilber_check_ez(x.get(), y.get(), k.c_str(), &text, &ok));
    }
    rep.add_certificate(text, ok);
  }
}

zilber_chain_model parse_model(const std::string& m) {
  if (m == "normalized") return ZILBER_NORMALIZED;
  if (m == "unnormalized") return ZILBER_UNNORMALIZED;
  input_error("--model must be normalized or unnormalized");
}

struct SkeletaArgs {
  bool filtered_ez = false, skeleton_product = false;
  long p = -1, q = -1, n = -1;
  std::string model = "normalized";
};

void cmd_skeleta(Session& s, Report& rep, const std::string& a, const std::string& b, const SkeletaArgs& args,
                 long dim) {
  if (!args.filtered_ez && !args.skeleton_product) input_error("skeleta needs --filtered-ez or --skeleton-product");
  const std::size_t na = s.natural_dimension(a), nb = s.natural_dimension(b);
  const std::size_t d = opt_dim(dim).value_or(std::min(std::max<std::size_t>(na + nb, 1), max_dim()));
  rep.params["dim_bound"] = d;
  Sset x = s.space(a, d), y = s.space(b, d);
  char* text = nullptr;
  int ok = 0;
  if (args.filtered_ez) {
    rep.params["model"] = args.model;
    check(zilber_check_filtered_ez(x.get(), y.get(), parse_model(args.model), &text, &ok));
    rep.add_certificate(text, ok);
  }
  if (args.skeleton_product) {
    std::size_t p = 0, q = 0;
    if (args.p < 0) check(zilber_sset_skeletal_dimension(x.get(), &p));
    if (args.q < 0) check(zilber_sset_skeletal_dimension(y.get(), &q));
    if (args.p >= 0) p = static_cast<std::size_t>(args.p);
    if (args.q >= 0) q = static_cast<std::size_t>(args.q);
    const std::size_t n = args.n >= 0 ? static_cast<std::size_t>(args.n) : p + q;
    rep.params["skeleton"] = {{"p", p}, {"q", q}, {"n", n}};
    check(zilber_check_skeleton_product(x.get(), y.get(), p, q, n, &text, &ok));
    rep.add_certificate(text, ok);
  }
}

struct SsArgs {
  long pages = 2;
  bool pairing = false, corrupt = false, heart = false;
  std::string with, model = "normalized";
};

void cmd_ss(Session& s, Report& rep, const std::string& input, const SsArgs& args, long dim) {
  if (args.pages < 1) input_error("--pages must be at least 1");
  const auto r = static_cast<std::size_t>(args.pages);
  rep.params["pages"] = r;
  Session::Loaded l = s.load(input);
  Filt f;
  zilber_filt* fout = nullptr;
  Sset x;
  if (l.format == "filt") {
    if (args.pairing || args.heart) input_error("--pairing and --heart need a simplicial set input");
    check(zilber_filt_from_json(l.text.c_str(), &fout));
    f.reset(fout);
  } else {
    std::size_t natural = s.natural_dimension(input) + 1;
    if (args.pairing) natural += s.natural_dimension(args.with.empty() ? input : args.with);
    const std::size_t d = opt_dim(dim).value_or(std::min(natural, max_dim()));
    rep.params["dim_bound"] = d;
    rep.params["model"] = args.model;
    x = s.space_from(input, l, d);
    check(zilber_filt_skeletal(x.get(), parse_model(args.model), &fout));
    f.reset(fout);
  }
  zilber_ss* sout = nullptr;
  check(zilber_ss_compute(f.get(), r, &sout));
  Spectral ss(sout);
  char* text = nullptr;
  int ok = 0;
  check(zilber_ss_to_json(ss.get(), &text));
  json doc = take_json(text);
  doc.erase("format");
  doc.erase("version");
  rep.add_table("spectral_sequence", std::move(doc));
  check(zilber_check_spectral(ss.get(), &text, &ok));
  rep.add_certificate(text, ok);
  if (args.heart) {
    check(zilber_check_heart(x.get(), &text, &ok));
    rep.add_certificate(text, ok);
  }
  if (args.pairing) {
    std::size_t d = 0;
    check(zilber_sset_dim_bound(x.get(), &d));
    Sset y = args.with.empty() ? Sset() : s.space(args.with, d);
    const zilber_sset* right = y ? y.get() : x.get();
    rep.params["corrupt"] = args.corrupt;
    for (std::size_t page = 1; page <= r; ++page) {
      check(zilber_check_leibniz(x.get(), right, parse_model(args.model), page, args.corrupt ? 1 : 0, &text, &ok));
      rep.add_certificate(text, ok);
    }
  }
}

void cmd_day(Session& s, Report& rep, const std::vector<std::string>& args, const std::string& which, long dim) {
  const std::size_t need = which == "unit" ? 1 : which == "symmetry" ? 2 : which == "associativity" ? 3 : 0;
  if (need == 0) input_error("--check must be unit, symmetry or associativity");
  if (args.size() < need) input_error("day --check " + which + " needs " + std::to_string(need) + " inputs");
  std::vector<Filt> fs;
  for (std::size_t i = 0; i < need; ++i) {
    Session::Loaded l = s.load(args[i]);
    zilber_filt* out = nullptr;
    if (l.format == "filt") {
      check(zilber_filt_from_json(l.text.c_str(), &out));
    } else {
      const std::size_t d = opt_dim(dim).value_or(std::min(s.natural_dimension(args[i]) + 1, max_dim()));
      Sset x = s.space_from(args[i], l, d);
      check(zilber_filt_skeletal(x.get(), ZILBER_NORMALIZED, &out));
    }
    fs.emplace_back(out);
  }
  char* text = nullptr;
  int ok = 0;
  check(zilber_check_day(which.c_str(), fs[0].get(), need > 1 ? fs[1].get() : nullptr,
                         need > 2 ? fs[2].get() : nullptr, &text, &ok));
  rep.add_certificate(text, ok);
}

std::vector<std::size_t> parse_list(const std::string& s, const std::string& flag) {
  std::vector<std::size_t> out;
  for (const auto& part : split(s, ',')) {
    const auto dash = part.find('-');
    auto num = [&](const std::string& t) -> std::size_t {
      if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 4)
        input_error("bad value in " + flag + ": " + s);
      return std::stoul(t);
    };
    if (dash == std::string::npos) {
      out.push_back(num(part));
    } else {
      const std::size_t lo = num(part.substr(0, dash)), hi = num(part.substr(dash + 1));
      if (lo > hi) input_error("empty range in " + flag + ": " + part);
      for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) input_error(flag + " is empty");
  return out;
}

struct PromonoidalArgs {
  std::vector<std::string> checks;
  std::string ns = "1,1", m, k, model = "delta_op", profunctor;
  long b = -1, entry_max = -1, output_max = -1, length = 3, samples = 50;
};

void cmd_promonoidal(Session& s, Report& rep, const PromonoidalArgs& a, std::uint64_t seed) {
  if (a.checks.empty()) input_error("promonoidal needs --check");
  for (const auto& check_name : a.checks) {
    json p = json::object();
    if (check_name == "left-kan" || check_name == "product-colimit") p["ns"] = parse_list(a.ns, "--ns");
    if (a.b >= 0) p["b"] = a.b;
    if (!a.m.empty()) p["m"] = parse_list(a.m, "--m");
    if (!a.k.empty()) p["k"] = parse_list(a.k, "--k");
    if (a.entry_max >= 0) p["entry_max"] = a.entry_max;
    if (a.output_max >= 0) p["output_max"] = a.output_max;
    if (check_name == "operator-frag") {
      p["model"] = a.model;
      p["length"] = a.length;
      p["samples"] = a.samples;
      p["seed"] = seed;
    }
    if (check_name == "coyoneda") {
      if (a.profunctor.empty()) input_error("--check coyoneda needs --profunctor FILE");
      Session::Loaded l = s.load(a.profunctor);
      try {
        p["profunctor"] = json::parse(l.text);
      } catch (const json::parse_error& e) {
        input_error(a.profunctor + ": " + e.what());
      }
    }
    json shown = p;
    if (shown.contains("profunctor")) shown["profunctor"] = "<document>";
    rep.params[check_name] = shown;
    char* text = nullptr;
    int ok = 0;
    check(zilber_check_promonoidal(check_name.c_str(), p.dump().c_str(), &text, &ok));
    rep.add_certificate(text, ok);
  }
}

// Writes the document itself rather than a report.
void cmd_export(Session& s, const std::string& input, const std::string& as, long dim) {
  const std::size_t d = opt_dim(dim).value_or(std::min(s.natural_dimension(input) + 1, max_dim()));
  Sset x = s.space(input, d);
  char* text = nullptr;
  if (as == "ssimp") {
    check(zilber_sset_to_json(x.get(), &text));
  } else if (as == "chain") {
    zilber_chain* c = nullptr;
    check(zilber_chain_normalized(x.get(), &c));
    Chain owned(c);
    check(zilber_chain_to_json(c, &text));
  } else {
    zilber_filt* f = nullptr;
    check(zilber_filt_skeletal(x.get(), ZILBER_NORMALIZED, &f));
    Filt owned(f);
    check(zilber_filt_to_json(f, &text));
  }
  std::cout << take_json(text).dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simplicial homological algebra: homology, Dold-Kan, Eilenberg-Zilber, skeletal filtrations, "
               "spectral sequences and promonoidal checks. Inputs are JSON files, - for stdin, or the builtins "
               "point, circle, torus, simplex:N, and products A*B of these."};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  bool no_timing = false;
  long dim = -1;
  app.add_option("--seed", opts.seed, "Seed for randomized suites")->capture_default_str();
  app.add_flag("--no-timing", no_timing, "Omit the timing field");
  app.add_option("--dim", dim, "Dimension bound for builtins (capped by ZILBER_MAX_DIM, default 6)");
  app.set_version_flag("--version", zilber_version());

  std::string input, second, third;

  auto* homology = app.add_subcommand("homology", "Homology of an ssimp or chain document");
  homology->add_option("input", input, "ssimp.json, chain.json, builtin or -")->required();

  bool roundtrip = false;
  auto* doldkan = app.add_subcommand("doldkan", "Dold-Kan round trips");
  doldkan->add_option("input", input, "ssimp.json, chain.json, builtin or -")->required();
  doldkan->add_flag("--roundtrip", roundtrip, "Check N(Gamma(C)) = C or Gamma(N(A)) = A")->required();

  std::vector<std::string> ez_checks;
  auto* ez = app.add_subcommand("ez", "Eilenberg-Zilber shuffle map certificates");
  ez->add_option("a", input)->required();
  ez->add_option("b", second)->required();
  ez->add_option("--check", ez_checks, "chain, aw, unital, symmetry, homology, associativity or all")
      ->check(CLI::IsMember({"chain", "aw", "unital", "symmetry", "homology", "associativity", "all"}));
  ez->add_option("--third", third, "Third factor for --check associativity");

  SkeletaArgs sk;
  auto* skeleta = app.add_subcommand("skeleta", "Skeletal filtrations of products");
  skeleta->add_option("a", input)->required();
  skeleta->add_option("b", second)->required();
  skeleta->add_flag("--filtered-ez", sk.filtered_ez, "Filtered shuffle map containment and filtration 0");
  skeleta->add_flag("--skeleton-product", sk.skeleton_product, "sk_p A x sk_q B inside sk_n(A x B)");
  skeleta->add_option("--p", sk.p);
  skeleta->add_option("--q", sk.q);
  skeleta->add_option("--n", sk.n);
  skeleta->add_option("--model", sk.model)->check(CLI::IsMember({"normalized", "unnormalized"}));

  SsArgs ssa;
  auto* ss = app.add_subcommand("ss", "Spectral sequence of a filtration");
  ss->add_option("input", input, "filt.json, or a space (skeletal filtration)")->required();
  ss->add_option("--pages", ssa.pages, "Compute pages 1..r")->capture_default_str();
  ss->add_flag("--pairing", ssa.pairing, "Leibniz rule for the shuffle pairing on each page");
  ss->add_option("--with", ssa.with, "Right factor of the pairing (default: the input)");
  ss->add_flag("--corrupt", ssa.corrupt, "Flip one product sign first (negative control)");
  ss->add_flag("--heart", ssa.heart, "Compare E_1 with d_1 to the normalized complex");
  ss->add_option("--model", ssa.model)->check(CLI::IsMember({"normalized", "unnormalized"}));

  std::vector<std::string> day_inputs;
  std::string day_check;
  auto* day = app.add_subcommand("day", "Day convolution laws on filtrations");
  day->add_option("inputs", day_inputs, "filt.json files or spaces")->required();
  day->add_option("--check", day_check)->required()->check(CLI::IsMember({"unit", "symmetry", "associativity"}));

  std::string export_as = "ssimp";
  auto* exp = app.add_subcommand("export", "Write a space as an ssimp, chain (normalized) or filt (skeletal) document");
  exp->add_option("input", input)->required();
  exp->add_option("--as", export_as)->check(CLI::IsMember({"ssimp", "chain", "filt"}))->capture_default_str();

  PromonoidalArgs pa;
  auto* prom = app.add_subcommand("promonoidal", "Promonoidal and coend checks");
  prom->add_option("--check", pa.checks)
      ->required()
      ->check(CLI::IsMember({"mu-assoc", "mu-unit", "left-kan", "product-colimit", "operator-frag", "coyoneda"}));
  prom->add_option("--ns", pa.ns, "Comma-separated simplex dimensions")->capture_default_str();
  prom->add_option("--b", pa.b, "Bound");
  prom->add_option("--m", pa.m, "Levels, e.g. 2 or 0-4");
  prom->add_option("--k", pa.k, "Levels, e.g. 0-5");
  prom->add_option("--entry-max", pa.entry_max);
  prom->add_option("--output-max", pa.output_max);
  prom->add_option("--length", pa.length, "Longest object of the operator fragment")->capture_default_str();
  prom->add_option("--samples", pa.samples)->capture_default_str();
  prom->add_option("--model", pa.model)->check(CLI::IsMember({"delta_op", "point"}));
  prom->add_option("--profunctor", pa.profunctor, "prof.json for --check coyoneda");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opts.timing = !no_timing;

  Session session;
  Report rep;
  const auto start = std::chrono::steady_clock::now();
  if (*exp) {
    try {
      cmd_export(session, input, export_as, dim);
      return 0;
    } catch (const Failure& f) {
      std::cerr << "zilber: " << f.message << "\n";
      return f.exit_code;
    }
  }
  try {
    if (*homology) {
      rep.command = "homology";
      cmd_homology(session, rep, input, dim);
    } else if (*doldkan) {
      rep.command = "doldkan";
      cmd_doldkan(session, rep, input, dim);
    } else if (*ez) {
      rep.command = "ez";
      cmd_ez(session, rep, input, second, third, ez_checks, dim);
    } else if (*skeleta) {
      rep.command = "skeleta";
      cmd_skeleta(session, rep, input, second, sk, dim);
    } else if (*ss) {
      rep.command = "ss";
      cmd_ss(session, rep, input, ssa, dim);
    } else if (*day) {
      rep.command = "day";
      cmd_day(session, rep, day_inputs, day_check, dim);
    } else if (*prom) {
      rep.command = "promonoidal";
      cmd_promonoidal(session, rep, pa, opts.seed);
    }
  } catch (const Failure& f) {
    std::cerr << "zilber: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "zilber: internal: " << e.what() << "\n";
    return 3;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

  json out = {{"command", rep.command}, {"inputs", session.inputs}, {"params", rep.params},
              {"results", rep.results}, {"pass", rep.pass},        {"seed", opts.seed}};
  if (opts.timing) out["timing_ms"] = ms.count();
  std::cout << out.dump(2) << "\n";
  return rep.pass ? 0 : 1;
}
