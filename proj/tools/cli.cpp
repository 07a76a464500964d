#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "zipstrata/coxeter.hpp"
#include "zipstrata/errors.hpp"
#include "zipstrata/fzip.hpp"
#include "zipstrata/grouplab.hpp"
#include "zipstrata/witt.hpp"
#include "zipstrata/zipdatum.hpp"

namespace zipstrata::cli {

using nlohmann::json;
using coxeter::ParabolicType;
using coxeter::WeylGroup;

namespace {

// Signals a failed property check; carries the already formatted report.
struct CheckFailed {
  std::string report;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw InvalidArgument("unsupported --format '" + format + "' for this command");
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InvalidArgument("bad range '" + s + "' (expected a or a..b)");
  }
}

// ---------------------------------------------------------------------------
// Shared datum flags for strata and purity-check.

struct DatumFlags {
  std::string group;
  int n = 0;
  int rank = 0;
  std::vector<int> blocks;
  std::vector<int> I;
  std::vector<int> J;
  std::vector<int> delta;
  bool all_types = false;
  bool all_deltas = false;
};

void add_datum_flags(CLI::App* cmd, DatumFlags& f) {
  cmd->add_option("--group", f.group, "GL, or a family A, B, C, D")->required();
  cmd->add_option("--n", f.n, "GL rank n");
  cmd->add_option("--rank", f.rank, "rank of the root system");
  cmd->add_option("--blocks", f.blocks, "GL block sizes, e.g. 1,20,1")->delimiter(',');
  cmd->add_option("--I", f.I, "simple indices of the parabolic type")->delimiter(',');
  cmd->add_option("--J", f.J, "explicit J (otherwise J comes from the cocharacter)")->delimiter(',');
  cmd->add_option("--delta", f.delta, "diagram automorphism as images of 1..rank")->delimiter(',');
}

struct NamedDatum {
  std::string name;
  zip::ZipCombinatorics z;
};

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::vector<int>> compositions(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1U << (n - 1)); ++mask) {
    std::vector<int> c{1};
    for (int i = 0; i + 1 < n; ++i) {
      if (mask & (1U << i)) c.push_back(1);
      else ++c.back();
    }
    out.push_back(c);
  }
  return out;
}

NamedDatum gl_datum(int n, const std::vector<int>& blocks) {
  int sum = 0;
  for (int b : blocks) {
    if (b < 1) throw InvalidArgument("block sizes must be positive");
    sum += b;
  }
  if (sum != n) throw InvalidArgument("--blocks must sum to --n");
  if (n < 2) throw InvalidArgument("GL needs n >= 2");
  WeylGroup w = lab::gl_weyl(n);
  return {"GL" + std::to_string(n) + " blocks " + join(blocks),
          zip::zip_from_cocharacter(w, lab::blocks_to_parabolic(blocks), WeylGroup::identity_automorphism(n - 1), true)};
}

// Resolves the flags into one datum, or a sweep when --all-types is set.
std::vector<NamedDatum> resolve_data(const DatumFlags& f) {
  std::vector<NamedDatum> out;
  if (f.group == "GL" || f.group == "gl") {
    if (f.n < 2) throw InvalidArgument("--n >= 2 is required for GL");
    if (f.all_types) {
      for (const auto& b : compositions(f.n)) out.push_back(gl_datum(f.n, b));
      return out;
    }
    if (f.blocks.empty()) throw InvalidArgument("--blocks is required for GL (or pass --all-types)");
    out.push_back(gl_datum(f.n, f.blocks));
    return out;
  }
  const auto family = coxeter::parse_family(f.group);
  if (f.rank < 1) throw InvalidArgument("--rank >= 1 is required for family " + f.group);
  WeylGroup w(family, f.rank);
  std::vector<coxeter::DiagramAutomorphism> deltas;
  if (f.all_deltas) deltas = w.diagram_automorphisms();
  else deltas.push_back(f.delta.empty() ? WeylGroup::identity_automorphism(f.rank) : f.delta);
  for (const auto& d : deltas)
    if (!w.is_diagram_automorphism(d)) throw InvalidArgument("--delta is not a diagram automorphism");
  std::vector<std::vector<int>> types;
  if (f.all_types) {
    for (unsigned mask = 0; mask < (1U << f.rank); ++mask) {
      std::vector<int> I;
      for (int i = 0; i < f.rank; ++i)
        if (mask & (1U << i)) I.push_back(i + 1);
      types.push_back(I);
    }
  } else {
    types.push_back(f.I);
  }
  for (const auto& I : types)
    for (int i : I)
      if (i < 1 || i > f.rank) throw InvalidArgument("simple index " + std::to_string(i) + " out of range");
  const std::string base = std::string(1, coxeter::family_letter(family)) + std::to_string(f.rank);
  for (const auto& d : deltas)
    for (const auto& I : types) {
      const std::string name = base + " I={" + join(I) + "} delta=" + join(d);
      if (!f.J.empty() && !f.all_types)
        out.push_back({name, zip::build_zip(w, ParabolicType(I), ParabolicType(f.J), d)});
      else
        out.push_back({name, zip::zip_from_cocharacter(w, ParabolicType(I), d)});
    }
  return out;
}

// ---------------------------------------------------------------------------

std::string cmd_weyl(const std::string& family, int rank, const std::string& format) {
  require_format(format, {"text", "json"});
  WeylGroup w(coxeter::parse_family(family), rank);
  const auto w0 = w.longest_element();
  if (format == "json") {
    json j{{"family", std::string(1, coxeter::family_letter(w.family()))},
           {"rank", rank},
           {"order", w.order_string()},
           {"positive_roots", w.positive_root_count()},
           {"longest_element", {{"word", w0.reduced_word()}, {"window", w0.window()}, {"length", w0.length()}}}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "type " << coxeter::family_letter(w.family()) << rank << "\n"
     << "order " << w.order_string() << "\n"
     << "positive roots " << w.positive_root_count() << "\n"
     << "longest element " << w0.word_string() << " (length " << w0.length() << ")\n";
  return os.str();
}

std::string cmd_strata(const DatumFlags& f, const std::string& format) {
  require_format(format, {"json", "dot"});
  if (f.all_types) throw InvalidArgument("strata takes a single datum");
  const auto data = resolve_data(f);
  return zip::export_poset(zip::stratum_poset(data.front().z), zip::parse_export_format(format));
}

std::string purity_text(const std::vector<std::pair<std::string, zip::PurityReport>>& reports, bool pass) {
  std::ostringstream os;
  for (const auto& [name, r] : reports) {
    os << name << ": " << r.strata << " strata, " << r.boundary_pairs << " boundary pairs, "
       << r.violations.size() << " violations\n";
    for (const auto& v : r.violations)
      os << "  " << v.w.word_string() << " > " << v.below.word_string() << " drops length by " << v.length_drop
         << "\n";
  }
  os << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string purity_json(const std::vector<std::pair<std::string, zip::PurityReport>>& reports, bool pass) {
  json arr = json::array();
  for (const auto& [name, r] : reports) {
    json v = json::array();
    for (const auto& x : r.violations)
      v.push_back({{"w", x.w.reduced_word()}, {"below", x.below.reduced_word()}, {"length_drop", x.length_drop}});
    arr.push_back({{"datum", name},
                   {"strata", r.strata},
                   {"boundary_pairs", r.boundary_pairs},
                   {"pass", r.pass},
                   {"violations", v}});
  }
  return json{{"pass", pass}, {"reports", arr}}.dump(2) + "\n";
}

std::string cmd_purity(const DatumFlags& f, const std::string& poset_file, const std::string& format,
                       std::ostream& err) {
  require_format(format, {"text", "json"});
  std::vector<std::pair<std::string, zip::PurityReport>> reports;
  bool pass = true;
  if (!poset_file.empty()) {
    zip::StratumPoset p;
    try {
      p = zip::parse_poset_json(read_file(poset_file));
    } catch (const InvalidArgument&) {
      throw;
    } catch (const Error& e) {
      throw InvariantViolation(std::string("poset file rejected: ") + e.what());
    }
    auto r = zip::purity_check(p);
    const auto order = zip::check_partial_order(p);
    if (!order.ok()) {
      r.pass = false;
      err << "poset relation is not a graded partial order with unique extremes\n";
    }
    pass = r.pass;
    reports.emplace_back(poset_file, r);
  } else {
    const auto data = resolve_data(f);
    for (const auto& d : data) {
      err << "purity: " << d.name << "\n";
      auto r = zip::purity_check(d.z);
      pass = pass && r.pass;
      reports.emplace_back(d.name, r);
    }
  }
  const std::string text = format == "json" ? purity_json(reports, pass) : purity_text(reports, pass);
  if (!pass) throw CheckFailed{text};
  return text;
}

std::string cmd_classify(const std::string& input, int max_ext, const std::string& format) {
  require_format(format, {"text", "json"});
  if (max_ext < 1) throw InvalidArgument("--max-ext must be positive");
  const fzip::FZip z = fzip::parse_fzip_json(read_file(input));
  const auto label = fzip::classify(z, max_ext);
  const auto t = z.type();
  std::size_t strata = 1;
  int top = 0;
  if (z.n >= 2) {
    const auto tp = fzip::type_to_parabolic(t);
    WeylGroup W = lab::gl_weyl(tp.n);
    const auto reps = W.min_coset_reps(tp.I);
    strata = reps.size();
    for (const auto& w : reps) top = std::max(top, w.length());
  }
  std::string where;
  if (strata == 1) where = "unique stratum";
  else if (label.length == top) where = "open stratum";
  else if (label.length == 0) where = "closed stratum";
  else where = "stratum " + label.word_string();
  if (format == "json") {
    json j{{"type", fzip::type_to_string(t)},
           {"w", label.w ? json(label.w->window()) : json(nullptr)},
           {"word", label.word},
           {"length", label.length},
           {"ext", label.ext},
           {"strata", strata},
           {"position", where}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << where << ", length " << label.length << "\n"
     << "type " << fzip::type_to_string(t) << ", w = " << label.word_string() << ", found over extension degree "
     << label.ext << "\n";
  return os.str();
}

std::string cmd_orbits(int n, std::uint64_t q, const std::string& ext, std::vector<int> blocks, std::ostream& err) {
  const auto [p, d] = lab::prime_power(q);
  const auto [lo, hi] = parse_range(ext);
  if (lo < 1 || hi < lo) throw InvalidArgument("--ext must be a range of positive degrees");
  if (n < 1) throw InvalidArgument("--n must be positive");
  if (blocks.empty()) blocks.assign(n, 1);
  int sum = 0;
  for (int b : blocks) sum += b;
  if (sum != n) throw InvalidArgument("--blocks must sum to --n");
  json censuses = json::array();
  bool identity = true;
  for (int s = lo; s <= hi; ++s) {
    err << "orbits: GL" << n << " over F_" << q << "^" << s << "\n";
    const auto zd = lab::standard_datum(blocks, p, d, s);
    const auto census = lab::zip_orbit_census(zd);
    json c = json::parse(lab::census_to_json(zd, census));
    identity = identity && c["orbit_stabilizer_identity"].get<bool>();
    censuses.push_back({{"ext", s}, {"orbit_count", census.orbits.size()}, {"census", c}});
  }
  json j{{"n", n}, {"q", q}, {"blocks", blocks}, {"censuses", censuses}, {"orbit_stabilizer_identity", identity}};
  if (!identity) throw CheckFailed{j.dump(2) + "\n"};
  return j.dump(2) + "\n";
}

std::string cmd_witt(int p, int d, int m, int n, int d_block, bool check) {
  if (d_block < 0) d_block = witt::default_d_block(n);
  if (n < 1 || d_block > n) throw InvalidArgument("need 0 <= --d-block <= --n and n >= 1");
  if (check) {
    const auto r = witt::check_reduction(n, p, d, m, d_block);
    const std::string text = witt::reduction_to_json(r);
    if (!r.ok()) throw CheckFailed{text};
    return text;
  }
  return witt::census_to_json(witt::orbit_census_level(n, p, d, m, d_block));
}

std::string cmd_counterexample(const std::vector<std::uint64_t>& qs, const std::string& format) {
  require_format(format, {"text", "json"});
  if (qs.empty()) throw InvalidArgument("--q needs at least one prime power");
  for (auto q : qs) lab::prime_power(q);
  const auto r = lab::counterexample_gl2(qs);
  std::string text;
  if (format == "json") {
    text = lab::counterexample_to_json(r);
  } else {
    std::ostringstream os;
    os << "q  |O_1|  q^2-1  lambda=(2,1)  Id in fiber  Id not in O_1  dim O_1  dim {Id}  codim\n";
    for (const auto& row : r.rows)
      os << row.q << "  " << row.orbit_size << "  " << row.expected_size << "  " << (row.lambda_constant ? "yes" : "no")
         << "  " << (row.identity_in_fiber ? "yes" : "no") << "  " << (row.identity_outside_orbit ? "yes" : "no")
         << "  " << row.dim_orbit << "  " << row.dim_identity_orbit << "  " << row.boundary_codim << "\n";
    os << (r.ok() ? "codimension-2 boundary point: the identity in the closure of O_1\n"
                  : "counterexample checks FAILED\n");
    text = os.str();
  }
  if (!r.ok()) throw CheckFailed{text};
  return text;
}

}  // namespace

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw InvalidArgument("cannot write " + tmp.string());
    o << text;
    o.flush();
    if (!o) throw InvalidArgument("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InvalidArgument("cannot move output into place: " + ec.message());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zipstrata: zip strata, F-zips, displays and finite group censuses"};
  app.require_subcommand(1);
  std::string out_path;
  std::string format;

  auto* weyl = app.add_subcommand("weyl", "Weyl group summary");
  std::string family;
  int rank = 0;
  weyl->add_option("--family", family)->required();
  weyl->add_option("--rank", rank)->required();

  DatumFlags sf;
  auto* strata = app.add_subcommand("strata", "stratum poset ^I W");
  add_datum_flags(strata, sf);

  DatumFlags pf;
  std::string poset_file;
  auto* purity = app.add_subcommand("purity-check", "graded boundary check");
  pf.group = "";
  purity->add_option("--group", pf.group, "GL, or a family A, B, C, D");
  purity->add_option("--n", pf.n);
  purity->add_option("--rank", pf.rank);
  purity->add_option("--blocks", pf.blocks)->delimiter(',');
  purity->add_option("--I", pf.I)->delimiter(',');
  purity->add_option("--J", pf.J)->delimiter(',');
  purity->add_option("--delta", pf.delta)->delimiter(',');
  purity->add_flag("--all-types", pf.all_types, "sweep every parabolic type");
  purity->add_flag("--all-deltas", pf.all_deltas, "sweep every diagram automorphism");
  purity->add_option("--poset", poset_file, "replay an exported poset JSON file");

  auto* classify = app.add_subcommand("classify", "stratum of an F-zip");
  std::string input;
  int max_ext = 3;
  classify->add_option("--input", input, "F-zip JSON file")->required();
  classify->add_option("--max-ext", max_ext, "largest extension degree tried");

  auto* orbits = app.add_subcommand("orbits", "zip orbit census for GL_n");
  int on = 0;
  std::uint64_t oq = 0;
  std::string ext = "1";
  std::vector<int> oblocks;
  orbits->add_option("--n", on)->required();
  orbits->add_option("--q", oq)->required();
  orbits->add_option("--ext", ext, "extension degrees, a or a..b");
  orbits->add_option("--blocks", oblocks, "block sizes (default all 1)")->delimiter(',');

  auto* wittc = app.add_subcommand("witt", "display orbits over truncated Witt vectors");
  int wp = 0, wd = 1, wm = 1, wn = 2, wdb = -1;
  bool check = false;
  wittc->add_option("--p", wp)->required();
  wittc->add_option("--d", wd);
  wittc->add_option("--m", wm);
  wittc->add_option("--n", wn);
  wittc->add_option("--d-block", wdb, "size of the first block (default n/2)");
  wittc->add_flag("--check-reduction", check);

  auto* counter = app.add_subcommand("counterexample", "GL_2 conjugation example");
  std::vector<std::uint64_t> qs{2, 3, 4, 5};
  counter->add_option("--q", qs, "prime powers")->delimiter(',');

  for (auto* c : {weyl, strata, purity, classify, orbits, wittc, counter})
  {
    c->add_option("--format", format, "json, dot or text");
    c->add_option("--out", out_path, "write the result here instead of standard output");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto fmt = [&](const char* dflt) { return format.empty() ? std::string(dflt) : format; };
  std::string result;
  int code = kOk;
  try {
    if (*weyl) result = cmd_weyl(family, rank, fmt("text"));
    else if (*strata) result = cmd_strata(sf, fmt("json"));
    else if (*purity) {
      if (poset_file.empty() && pf.group.empty()) throw InvalidArgument("purity-check needs --group or --poset");
      result = cmd_purity(pf, poset_file, fmt("text"), err);
    } else if (*classify) result = cmd_classify(input, max_ext, fmt("text"));
    else if (*orbits) {
      require_format(fmt("json"), {"json"});
      result = cmd_orbits(on, oq, ext, oblocks, err);
    } else if (*wittc) {
      require_format(fmt("json"), {"json"});
      result = cmd_witt(wp, wd, wm, wn, wdb, check);
    } else if (*counter) result = cmd_counterexample(qs, fmt("text"));
  } catch (const CheckFailed& f) {
    result = f.report;
    code = kCheckFailed;
    err << "check failed\n";
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  try {
    if (out_path.empty()) out << result;
    else write_atomic(out_path, result);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return code;
}

}  // namespace zipstrata::cli
