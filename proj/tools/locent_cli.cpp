// locent: command-line front end. Reports are JSON on stdout (or --output).
// Exit status: 0 success, 1 failed computation check, 2 bad input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "locent/io.hpp"

using namespace locent;
using io::Json;

namespace {

struct Common {
  std::string output;
  unsigned threads = 0;
  std::size_t budget = 0;
  bool timings = false;
};

struct Loaded {
  SFT sft;
  Cover cover;
};

EntropyOptions options(const Common& c) {
  EntropyOptions o;
  o.threads = c.threads;
  if (const char* env = std::getenv("LOCENT_NODE_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw io::InputError("LOCENT_NODE_BUDGET must be a positive integer");
    o.node_budget = v;
  }
  if (c.budget) o.node_budget = c.budget;
  return o;
}

Alphabet measure_alphabet(const Json& m, const std::optional<SFT>& sft) {
  if (m.contains("alphabet")) {
    std::vector<std::string> names;
    for (const auto& s : m["alphabet"]) names.push_back(s.get<std::string>());
    return Alphabet(std::move(names));
  }
  return sft ? sft->alphabet() : Alphabet::binary();
}

int emit(const Common& c, const Json& report, int status = 0) {
  const std::string text = report.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output);
    if (!out) throw io::InputError("cannot write " + c.output);
    out << text;
  }
  return status;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("-o,--output", c.output, "write the JSON report to this file");
  app->add_option("--threads", c.threads, "worker threads (0: all cores)");
  app->add_option("--budget", c.budget, "set-cover node budget (overrides LOCENT_NODE_BUDGET)");
  app->add_flag("--timings", c.timings, "include wall-clock seconds per window");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local entropy of covers on subshifts of finite type over Z^d"};
  app.require_subcommand(1);
  app.footer("Environment: LOCENT_NODE_BUDGET overrides the default set-cover node budget.");
  Common common;
  std::function<int()> run;

  // group
  auto* group = app.add_subcommand("group", "Folner sets and boundaries in Z^d");
  group->require_subcommand(1);
  std::string folner_name = "box", folner_file;
  int dim = 1;
  std::size_t n = 1;
  auto* folner = group->add_subcommand("folner", "n-th member of a Folner sequence");
  folner->add_option("--folner", folner_name, "box or square (intervals {n^2..n^2+n-1})");
  folner->add_option("--folner-file", folner_file, "Folner sequence JSON");
  folner->add_option("--d", dim, "dimension")->check(CLI::Range(1, 3));
  folner->add_option("--n", n, "index (>= 1)")->required()->check(CLI::PositiveNumber);
  add_common(folner, common);
  folner->callback([&] {
    run = [&] {
      const auto seq = folner_file.empty() ? io::folner_from_name(folner_name, dim)
                                           : io::folner_from_json(io::read_file(folner_file));
      const auto f = locent::folner(seq, n);
      Json j;
      j["n"] = n;
      j["size"] = f.size();
      j["set"] = io::to_json(f);
      return emit(common, j);
    };
  });

  std::string set_file, k_file;
  double delta = -1.0;
  auto* boundary = group->add_subcommand("boundary", "B(A,K) and |B(A,K)|/|A|");
  boundary->add_option("--set", set_file, "A as JSON")->required();
  boundary->add_option("--k", k_file, "K as JSON")->required();
  boundary->add_option("--delta", delta, "report (K,delta)-invariance");
  add_common(boundary, common);
  boundary->callback([&] {
    run = [&] {
      const auto a = io::subset_from_json(io::read_file(set_file));
      const auto k = io::subset_from_json(io::read_file(k_file), a.dim());
      if (a.empty()) throw io::InputError("A must be non-empty");
      const auto rep = invariance_ratio(a, k);
      Json j;
      j["boundary"] = io::to_json(locent::boundary(a, k));
      j["boundary_size"] = rep.boundary_size;
      j["ratio"] = io::number(rep.ratio);
      if (delta >= 0) j["satisfied"] = rep.satisfied(delta);
      return emit(common, j);
    };
  });

  // tile
  std::string shapes_file, target_file;
  double epsilon = 0.1;
  auto* tile = app.add_subcommand("tile", "epsilon-quasi-tiling of a target by right translates of shapes");
  tile->add_option("--shapes", shapes_file, "JSON list of shapes")->required();
  tile->add_option("--target", target_file, "target set JSON")->required();
  tile->add_option("--epsilon", epsilon, "epsilon in (0,1)")->check(CLI::Range(0.0, 1.0));
  add_common(tile, common);
  tile->callback([&] {
    run = [&] {
      const auto target = io::subset_from_json(io::read_file(target_file));
      std::vector<FiniteSubset> shapes;
      for (const auto& s : io::read_file(shapes_file)) shapes.push_back(io::subset_from_json(s, target.dim()));
      const auto t = quasi_tile(shapes, target, epsilon);
      const auto check = verify_quasi_tiling(t);
      return emit(common, io::to_json(t, check), t.ok && check.all() ? 0 : 1);
    };
  });

  // lang
  std::string sft_file, window_file;
  bool list_words = false;
  auto* lang = app.add_subcommand("lang", "patterns of an SFT on a finite window");
  lang->add_option("--sft", sft_file, "SFT JSON")->required();
  lang->add_option("--window", window_file, "window JSON")->required();
  lang->add_flag("--list", list_words, "list the words");
  add_common(lang, common);
  lang->callback([&] {
    run = [&] {
      const auto sft = io::sft_from_json(io::read_file(sft_file));
      const auto w = io::subset_from_json(io::read_file(window_file), sft.dim());
      const auto l = language(sft, w);
      Json j;
      j["window"] = io::to_json(w);
      j["size"] = l.size();
      j["exact"] = l.exact();
      if (list_words) {
        j["words"] = Json::array();
        for (std::size_t i = 0; i < l.size(); ++i) {
          Json word = Json::array();
          for (auto s : l.word(i)) word.push_back(sft.alphabet().name(s));
          j["words"].push_back(std::move(word));
        }
      }
      return emit(common, j);
    };
  });

  // entropy
  auto* entropy = app.add_subcommand("entropy", "entropy of a cover");
  entropy->require_subcommand(1);
  std::string cover_file, measure_file, kind = "auto";
  std::vector<std::string> measure_files;
  std::size_t nmax = 16;
  int refine = 2;
  auto load = [&] {
    auto sft = io::sft_from_json(io::read_file(sft_file));
    auto cover = io::cover_from_json(io::read_file(cover_file), sft.alphabet(), sft.dim());
    return Loaded{std::move(sft), std::move(cover)};
  };
  auto entropy_common = [&](CLI::App* s) {
    s->add_option("--sft", sft_file, "SFT JSON")->required();
    s->add_option("--cover", cover_file, "cover JSON")->required();
    s->add_option("--folner", folner_name, "box or square");
    s->add_option("--folner-file", folner_file, "Folner sequence JSON");
    s->add_option("--nmax", nmax, "number of windows")->check(CLI::PositiveNumber);
    add_common(s, common);
  };
  auto sequence = [&](int d) {
    return folner_file.empty() ? io::folner_from_name(folner_name, d) : io::folner_from_json(io::read_file(folner_file));
  };

  auto* top = entropy->add_subcommand("top", "h_top(G,U): log N(U_{F_n}) / |F_n|");
  entropy_common(top);
  top->callback([&] {
    run = [&] {
      const auto in = load();
      const auto e = h_top(in.sft, in.cover, sequence(in.sft.dim()), nmax, options(common));
      return emit(common, io::to_json(e, common.timings));
    };
  });

  auto* meas = entropy->add_subcommand("measure", "h_mu of a partition, or of a cover through finer partitions");
  entropy_common(meas);
  meas->add_option("--measure", measure_file, "measure JSON")->required();
  meas->add_option("--refine", refine, "refinement depth r for covers")->check(CLI::NonNegativeNumber);
  meas->add_option("--kind", kind, "auto, partition, cover or minus")
      ->check(CLI::IsMember({"auto", "partition", "cover", "minus"}));
  meas->callback([&] {
    run = [&] {
      const auto in = load();
      const auto mu = io::measure_from_json(io::read_file(measure_file), in.sft.alphabet(), in.sft.dim());
      const auto seq = sequence(in.sft.dim());
      const auto opts = options(common);
      std::string k = kind;
      if (k == "auto") k = is_partition(in.sft, in.cover, in.cover.support()) ? "partition" : "cover";
      Json j;
      j["kind"] = k;
      if (k == "partition") {
        j["estimate"] = io::to_json(h_mu_partition(in.sft, mu, in.cover, seq, nmax, opts), common.timings);
      } else if (k == "minus") {
        j["estimate"] = io::to_json(h_mu_minus_cover(in.sft, mu, in.cover, seq, nmax, opts), common.timings);
      } else {
        const auto c = h_mu_cover(in.sft, mu, in.cover, seq, nmax, refine, opts);
        j["refine"] = refine;
        j["candidates"] = c.candidates;
        j["estimate"] = io::to_json(c.estimate, common.timings);
        j["best_partition"] = io::to_json(c.best, in.sft.alphabet());
      }
      return emit(common, j);
    };
  });

  auto* katok = entropy->add_subcommand("katok", "(1/|F_n|) log b(F_n, 1 - epsilon, U)");
  entropy_common(katok);
  katok->add_option("--measure", measure_file, "measure JSON")->required();
  katok->add_option("--epsilon", epsilon, "epsilon in (0,1)")->check(CLI::Range(0.0, 1.0));
  katok->callback([&] {
    run = [&] {
      const auto in = load();
      const auto mu = io::measure_from_json(io::read_file(measure_file), in.sft.alphabet(), in.sft.dim());
      const auto k = katok_entropy(in.sft, mu, in.cover, sequence(in.sft.dim()), nmax, epsilon, options(common));
      return emit(common, io::to_json(k, common.timings), k.weiss_all ? 0 : 1);
    };
  });

  auto* vp = entropy->add_subcommand("vp", "h_top(G,U) against h_mu(G,U) over a list of measures");
  entropy_common(vp);
  vp->add_option("--measure", measure_files, "measure JSON (repeatable; a file may hold a list)")->required();
  vp->add_option("--refine", refine, "refinement depth r for covers")->check(CLI::NonNegativeNumber);
  vp->callback([&] {
    run = [&] {
      const auto in = load();
      std::vector<Measure> ms;
      for (const auto& f : measure_files) {
        const auto j = io::read_file(f);
        if (j.is_array())
          for (const auto& m : j) ms.push_back(io::measure_from_json(m, in.sft.alphabet(), in.sft.dim()));
        else
          ms.push_back(io::measure_from_json(j, in.sft.alphabet(), in.sft.dim()));
      }
      const auto r = vp_check(in.sft, in.cover, ms, sequence(in.sft.dim()), nmax, refine, options(common));
      return emit(common, io::to_json(r, common.timings), r.one_sided_ok ? 0 : 1);
    };
  });

  // tuples
  auto* tuples = app.add_subcommand("tuples", "entropy pairs and tuples");
  tuples->require_subcommand(1);
  std::string points_file, sets_file, sft2_file;
  int rmax = 3, r = 1;
  double tol = 1e-3;
  std::size_t arity = 2;
  std::size_t tuple_nmax = 8;

  auto* check = tuples->add_subcommand("check", "verdict from canonical admissible covers");
  check->add_option("--sft", sft_file, "SFT JSON")->required();
  check->add_option("--points", points_file, "points JSON")->required();
  check->add_option("--rmax", rmax, "largest resolution")->check(CLI::NonNegativeNumber);
  check->add_option("--tol", tol, "tolerance in nats")->check(CLI::PositiveNumber);
  check->add_option("--nmax", tuple_nmax, "windows per resolution")->check(CLI::PositiveNumber);
  add_common(check, common);
  check->callback([&] {
    run = [&] {
      const auto sft = io::sft_from_json(io::read_file(sft_file));
      const auto c = io::points_from_json(io::read_file(points_file), sft.alphabet(), sft.dim());
      const auto rep = is_entropy_tuple(sft, c, rmax, tuple_nmax, tol, options(common));
      Json j = io::to_json(rep);
      j["cover"] = io::to_json(admissible_cover(sft, c).cover, sft.alphabet());
      return emit(common, j);
    };
  });

  auto* upe = tuples->add_subcommand("upe", "pair verdicts over all distinct r-cylinders");
  upe->add_option("--sft", sft_file, "SFT JSON")->required();
  upe->add_option("--r", r, "resolution")->check(CLI::NonNegativeNumber);
  upe->add_option("--tol", tol, "tolerance in nats")->check(CLI::PositiveNumber);
  upe->add_option("--nmax", tuple_nmax, "windows")->check(CLI::PositiveNumber);
  add_common(upe, common);
  upe->callback([&] {
    run = [&] {
      const auto sft = io::sft_from_json(io::read_file(sft_file));
      const auto rep = upe_check(sft, r, tuple_nmax, tol, options(common));
      Json j;
      j["status"] = to_string(rep.status);
      j["pairs"] = rep.pairs;
      j["positive"] = rep.positive;
      if (rep.witness) {
        j["witness"] = Json::array();
        for (const auto& p : rep.witness->points) j["witness"].push_back(io::to_json(p, sft.alphabet()));
      }
      return emit(common, j);
    };
  });

  auto* lambda = tuples->add_subcommand("lambda", "lambda_n(mu) of a product of sets");
  lambda->add_option("--measure", measure_file, "measure JSON")->required();
  lambda->add_option("--n", arity, "arity")->check(CLI::Range(2, 16));
  lambda->add_option("--sets", sets_file, "JSON list of n symbolic sets")->required();
  lambda->add_option("--sft", sft_file, "SFT JSON supplying the alphabet");
  lambda->add_option("--d", dim, "dimension")->check(CLI::Range(1, 3));
  add_common(lambda, common);
  lambda->callback([&] {
    run = [&] {
      std::optional<SFT> sft;
      if (!sft_file.empty()) sft = io::sft_from_json(io::read_file(sft_file));
      const int d = sft ? sft->dim() : dim;
      const auto mj = io::read_file(measure_file);
      const auto alphabet = measure_alphabet(mj, sft);
      const auto mu = io::measure_from_json(mj, alphabet, d);
      const auto lam = lambda_n(mu, arity);
      std::vector<SymbolicSet> sets;
      for (const auto& s : io::read_file(sets_file)) sets.push_back(io::set_from_json(s, alphabet, d));
      Json j;
      j["variant"] = to_string(lam.variant);
      j["n"] = arity;
      j["mass"] = io::number(lam.mass(sets));
      return emit(common, j);
    };
  });

  auto* product = tuples->add_subcommand("product", "pair verdicts on X_1 x X_2 against the product formula");
  product->add_option("--sft1", sft_file, "first factor SFT JSON")->required();
  product->add_option("--sft2", sft2_file, "second factor SFT JSON")->required();
  product->add_option("--points", points_file, "JSON list of point files' contents on the product alphabet")
      ->required();
  product->add_option("--tol", tol, "tolerance in nats")->check(CLI::PositiveNumber);
  product->add_option("--nmax", tuple_nmax, "windows")->check(CLI::PositiveNumber);
  add_common(product, common);
  product->callback([&] {
    run = [&] {
      const auto a = io::sft_from_json(io::read_file(sft_file));
      const auto b = io::sft_from_json(io::read_file(sft2_file));
      const auto prod = SFT::product(a, b);
      auto pj = io::read_file(points_file);
      if (pj.is_object()) pj = Json::array({pj});
      std::vector<TupleCandidate> cands;
      for (const auto& c : pj) cands.push_back(io::points_from_json(c, prod.alphabet(), prod.dim()));
      const auto rep = product_tuple_check(a, b, cands, tuple_nmax, tol, options(common));
      Json j;
      j["cases"] = Json::array();
      for (const auto& pc : rep.cases) {
        Json x;
        x["points"] = Json::array();
        for (const auto& p : pc.candidate.points) x["points"].push_back(io::to_json(p, prod.alphabet()));
        x["first"] = pc.first_diagonal ? "DIAGONAL" : to_string(pc.first);
        x["second"] = pc.second_diagonal ? "DIAGONAL" : to_string(pc.second);
        x["predicted"] = to_string(pc.predicted);
        x["observed"] = to_string(pc.observed);
        j["cases"].push_back(std::move(x));
      }
      j["decided"] = rep.decided;
      j["agreements"] = rep.agreements;
      j["disagreements"] = rep.disagreements;
      return emit(common, j, rep.disagreements ? 1 : 0);
    };
  });

  // plotdata
  std::string report_file;
  auto* plot = app.add_subcommand("plotdata", "columns n, value, running infimum, certified upper bound");
  plot->add_option("--report", report_file, "entropy report JSON")->required();
  plot->add_option("-o,--output", common.output, "write to this file");
  plot->callback([&] {
    run = [&] {
      auto j = io::read_file(report_file);
      if (j.contains("estimate")) j = j["estimate"];
      const auto text = io::plot_data(j);
      if (common.output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(common.output);
        if (!out) throw io::InputError("cannot write " + common.output);
        out << text;
      }
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run ? run() : 2;
  } catch (const io::InputError& e) {
    std::cerr << "locent: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "locent: bad input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "locent: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "locent: " << e.what() << "\n";
    return 1;
  }
}
