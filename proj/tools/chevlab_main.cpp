// chevlab: exact computations in elementary Chevalley groups over finite
// local rings, plus a brute-force rigidity engine for explicit finite
// groups.  See README.md for the command overview.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "chevlab/autos.hpp"
#include "chevlab/cache.hpp"
#include "chevlab/decomp.hpp"
#include "chevlab/fixtures.hpp"
#include "chevlab/report.hpp"
#include "chevlab/sha.hpp"

using namespace chevlab;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  std::string phi = "A2";
  std::string ring = "Z9";
  std::string model = "adjoint";
  std::string word_file, word2_file, aut_file, group_file, morphism = "identity";
  std::string lemma_case;
  std::string report_path;
  std::vector<std::string> d_values;
  uint64_t seed = 0;
  int64_t budget = 100000;
  int samples = 10000;

  json to_json() const {
    return json{{"command", command},
                {"phi", phi},
                {"ring", ring},
                {"model", model},
                {"word", word_file},
                {"word2", word2_file},
                {"aut", aut_file},
                {"group", group_file},
                {"morphism", morphism},
                {"case", lemma_case},
                {"d", d_values},
                {"seed", seed},
                {"budget", budget},
                {"samples", samples},
                {"invertibility_enforced", false}};
  }
};

ContextPtr make_ctx(const RunConfig& cfg) {
  LocalRing ring = LocalRing::from_name(cfg.ring);
  auto kind = cfg.model == "natural" ? Representation::Kind::NaturalA
                                     : Representation::Kind::Adjoint;
  // the CLI is a lab tool: invertibility screening is recorded in
  // the config instead of enforced, so SL_3(F_2)-style contexts stay usable
  ContextPtr ctx = GroupContext::make(cfg.phi, ring, kind, false);
  if (cfg.model == "adjoint") {
    // serve the adjoint model from the persisted tables
    TableBundle b = load_or_build_tables(cfg.phi[0], std::stoi(cfg.phi.substr(1)));
    ctx = GroupContext::make(b.adjoint, ring, false);
    ctx->preload_commutator_tables(b.commutator);
  }
  return ctx;
}

std::chrono::steady_clock::time_point g_start;

void emit(const RunConfig& cfg, Report& rep) {
  rep.set_elapsed_ms(std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - g_start)
                         .count());
  if (cfg.report_path.empty()) {
    std::cout << rep.to_text();
  } else {
    rep.write_file(cfg.report_path);
  }
}

int run_roots(const RunConfig& cfg) {
  RootSystem rs = RootSystem::from_name(cfg.phi);
  Report rep(cfg.to_json());
  json info = {{"phi", rs.name()},
               {"rank", rs.rank()},
               {"positive_roots", rs.num_positive()},
               {"max_height", rs.max_height()}};
  json pos = json::array();
  for (int i = 0; i < rs.num_positive(); ++i)
    pos.push_back({{"coeffs", rs.root(i).coeffs},
                   {"height", rs.root(i).height},
                   {"long", rs.root(i).is_long}});
  info["roots"] = pos;
  json cartan = json::array();
  for (int i = 0; i < rs.rank(); ++i) {
    json row = json::array();
    for (int j = 0; j < rs.rank(); ++j) row.push_back(rs.cartan(i, j));
    cartan.push_back(row);
  }
  info["cartan"] = cartan;
  try {
    info["weyl_order"] = rs.weyl_order();
  } catch (const WeylTooLargeError&) {
    info["weyl_order"] = nullptr;
  }
  info["diagram_automorphisms"] = rs.diagram_automorphisms();
  rep.add(info);
  emit(cfg, rep);
  return 0;
}

int run_group(const RunConfig& cfg, bool do_mul) {
  ContextPtr ctx = make_ctx(cfg);
  GroupWord w = word_from_json(*ctx, load_json_file(cfg.word_file));
  GroupElement g = ctx->from_word(w);
  if (do_mul) {
    GroupWord w2 = word_from_json(*ctx, load_json_file(cfg.word2_file));
    g = ctx->mul(g, ctx->from_word(w2));
  }
  Report rep(cfg.to_json());
  rep.add({{"word", word_to_json(*ctx, g.word())},
           {"matrix", mat_to_json(*ctx, g.mat())},
           {"in_U", ctx->in_U(g)},
           {"in_V", ctx->in_V(g)},
           {"in_torus", ctx->in_torus(g)}});
  emit(cfg, rep);
  return 0;
}

int run_decompose(const RunConfig& cfg, const std::string& mode) {
  ContextPtr ctx = make_ctx(cfg);
  GroupWord w = word_from_json(*ctx, load_json_file(cfg.word_file));
  Report rep(cfg.to_json());
  if (mode == "bruhat") {
    BruhatForm f = bruhat_decompose(*ctx, w);
    rep.add({{"mode", "bruhat"},
             {"t", word_to_json(*ctx, f.t_word)},
             {"u", word_to_json(*ctx, f.u_word)},
             {"weyl_reduced_word", ctx->roots().weyl()[static_cast<size_t>(f.weyl)].word},
             {"weyl_length", ctx->roots().weyl()[static_cast<size_t>(f.weyl)].length},
             {"u2", word_to_json(*ctx, f.u2_word)},
             {"t_in_H", f.t_in_H},
             {"verified", f.verified}});
  } else {
    GaussForm f = gauss_decompose(*ctx, w, cfg.seed);
    rep.add({{"mode", "gauss"},
             {"t", word_to_json(*ctx, f.t_word)},
             {"u1", word_to_json(*ctx, f.u1_word)},
             {"v", word_to_json(*ctx, f.v_word)},
             {"u2", word_to_json(*ctx, f.u2_word)},
             {"t_in_H", f.t_in_H},
             {"verified", f.verified}});
  }
  emit(cfg, rep);
  return 0;
}

int run_aut(const RunConfig& cfg, bool do_apply) {
  ContextPtr ctx = make_ctx(cfg);
  StandardAutomorphism a = automorphism_from_json(ctx, load_json_file(cfg.aut_file));
  Report rep(cfg.to_json());
  if (do_apply) {
    GroupWord w = word_from_json(*ctx, load_json_file(cfg.word_file));
    GroupElement img = ctx->from_word(a.apply_word(w));
    rep.add({{"image_word", word_to_json(*ctx, img.word())},
             {"image_matrix", mat_to_json(*ctx, img.mat())}});
  } else {
    bool exhaustive = true;
    LocallyInnerReport li;
    try {
      li = locally_inner_test(a, true, cfg.budget, cfg.samples, cfg.seed);
    } catch (const TooLargeError&) {
      exhaustive = false;
      li = locally_inner_test(a, false, cfg.budget, cfg.samples, cfg.seed);
    }
    json jr = {{"factors", a.factors().size()},
               {"exhaustive", exhaustive},
               {"locally_inner", li.locally_inner},
               {"checked", li.checked},
               {"undecided", li.undecided}};
    if (li.counterexample) jr["counterexample"] = word_to_json(*ctx, *li.counterexample);
    rep.add(jr);
  }
  emit(cfg, rep);
  return 0;
}

int run_lemma(const RunConfig& cfg) {
  ContextPtr ctx = make_ctx(cfg);
  const LocalRing& r = ctx->ring();
  Report rep(cfg.to_json());
  json out;
  if (cfg.lemma_case == "3.2") {
    RingMorphism rho = morphism_from_json(r, json(cfg.morphism));
    out = replay_lemma_3_2(*ctx, rho);
  } else if (cfg.lemma_case == "3.3") {
    auto autos = ctx->roots().diagram_automorphisms();
    if (autos.size() < 2) throw AutosError("no nontrivial graph automorphism for " + cfg.phi);
    out = replay_lemma_3_3(*ctx, autos[1], cfg.budget);
  } else if (cfg.lemma_case == "3.4") {
    std::vector<RingElem> d;
    if (!cfg.d_values.empty()) {
      for (const auto& s : cfg.d_values) d.push_back(ring_elem_from_json(r, json(s)));
    } else {
      auto units = r.units();
      for (int i = 0; i < ctx->roots().rank(); ++i)
        d.push_back(units[(static_cast<size_t>(i) + 1) % units.size()]);
    }
    out = replay_lemma_3_4(*ctx, d);
  } else if (cfg.lemma_case == "3.5") {
    RingMorphism rho = morphism_from_json(r, json(cfg.morphism));
    out = replay_lemma_3_5(*ctx, rho, cfg.budget);
  } else if (cfg.lemma_case == "3.6") {
    std::vector<RingElem> z;
    auto units = r.units();
    for (int i = 0; i < ctx->roots().rank(); ++i)
      z.push_back(units[units.size() > 1 ? 1 : 0]);
    out = replay_lemma_3_6(*ctx, z, cfg.budget);
  } else {
    throw ParseError("unknown lemma case: " + cfg.lemma_case);
  }
  rep.add(out);
  emit(cfg, rep);
  return 0;
}

int run_sha(const RunConfig& cfg) {
  FiniteGroup g = FiniteGroup::from_json(load_json_file(cfg.group_file));
  FiniteGroup::OutcReport oc = g.out_c();
  Report rep(cfg.to_json());
  json jr = {{"order", g.order()},
             {"classes", g.conjugacy_classes().size()},
             {"aut", oc.aut},
             {"inn", oc.inn},
             {"aut_c", oc.aut_c},
             {"out_c", oc.out_c},
             {"sha_rigid", oc.sha_rigid}};
  if (oc.witness) jr["witness_automorphism"] = *oc.witness;
  rep.add(jr);
  emit(cfg, rep);
  return 0;
}

int run_lie_check(const RunConfig& cfg) {
  auto rep_ptr = get_representation(cfg.phi[0], std::stoi(cfg.phi.substr(1)),
                                    Representation::Kind::Adjoint);
  Report rep(cfg.to_json());
  auto jac = rep_ptr->basis().jacobi_check();
  auto integ = rep_ptr->integrality_check();
  rep.add({{"phi", cfg.phi},
           {"dim", rep_ptr->dim()},
           {"jacobi_triples", jac.triples_checked},
           {"jacobi_violations", jac.violations},
           {"series_matrices", integ.matrices_checked},
           {"integrality_violations", integ.violations},
           {"ok", jac.ok() && integ.ok()}});
  emit(cfg, rep);
  return jac.ok() && integ.ok() ? 0 : 4;
}

int run_cache(const RunConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  Report rep(cfg.to_json());
  char type = cfg.phi[0];
  int rank = std::stoi(cfg.phi.substr(1));
  auto t0 = Clock::now();
  bool from_cache = false;
  TableBundle b = load_or_build_tables(type, rank, &from_cache);
  auto t1 = Clock::now();
  rep.add({{"phi", cfg.phi},
           {"from_cache", from_cache},
           {"path", cache_path(type, rank)},
           {"dim", b.adjoint->dim()},
           {"millis", std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()}});
  emit(cfg, rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chevlab: Chevalley groups over finite local rings"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--phi", cfg.phi, "root system, e.g. A2, D4");
    sub->add_option("--ring", cfg.ring, "ring name, e.g. Z9, F4, F3t2");
    sub->add_option("--model", cfg.model, "adjoint or natural");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--budget", cfg.budget, "enumeration budget");
    sub->add_option("--samples", cfg.samples, "sample count for sampled modes");
    sub->add_option("--report", cfg.report_path, "report output path (default stdout)");
  };

  CLI::App* roots = app.add_subcommand("roots", "root system info");
  roots->add_subcommand("info", "print root system data")->fallthrough();
  add_common(roots);

  CLI::App* group = app.add_subcommand("group", "evaluate and multiply words");
  CLI::App* geval = group->add_subcommand("eval", "evaluate a word file");
  geval->fallthrough();
  CLI::App* gmul = group->add_subcommand("mul", "multiply two word files");
  gmul->fallthrough();
  add_common(group);
  geval->add_option("--word", cfg.word_file, "word file")->required();
  gmul->add_option("--word", cfg.word_file, "first word file")->required();
  gmul->add_option("--word2", cfg.word2_file, "second word file")->required();

  CLI::App* dec = app.add_subcommand("decompose", "Bruhat/Gauss decomposition");
  std::string mode = "gauss";
  dec->add_option("--mode", mode, "bruhat or gauss")->required();
  dec->add_option("--word", cfg.word_file, "word file")->required();
  add_common(dec);

  CLI::App* aut = app.add_subcommand("aut", "standard automorphisms");
  CLI::App* aapply = aut->add_subcommand("apply", "apply an automorphism file to a word");
  aapply->fallthrough();
  CLI::App* averify = aut->add_subcommand("verify", "locally-inner test");
  averify->fallthrough();
  add_common(aut);
  aapply->add_option("--aut", cfg.aut_file, "automorphism descriptor")->required();
  aapply->add_option("--word", cfg.word_file, "word file")->required();
  averify->add_option("--aut", cfg.aut_file, "automorphism descriptor")->required();

  CLI::App* verify = app.add_subcommand("verify", "machine replays of the proof steps");
  CLI::App* lemma = verify->add_subcommand("lemma", "replay one lemma mechanism");
  lemma->fallthrough();
  lemma->add_option("--case", cfg.lemma_case, "3.2 | 3.3 | 3.4 | 3.5 | 3.6")->required();
  lemma->add_option("--morphism", cfg.morphism, "identity | frobenius");
  lemma->add_option("--d", cfg.d_values, "diagonal parameters");
  add_common(lemma);

  CLI::App* sha = app.add_subcommand("sha", "Sha-rigidity of a finite group fixture");
  sha->add_option("--group", cfg.group_file, "group fixture file")->required();
  add_common(sha);

  CLI::App* lie = app.add_subcommand("lie", "Chevalley basis integrity checks");
  lie->add_subcommand("check", "Jacobi and exponential-integrality reports")->fallthrough();
  add_common(lie);

  CLI::App* cache = app.add_subcommand("cache", "build or load persisted tables");
  add_common(cache);

  CLI11_PARSE(app, argc, argv);

  g_start = std::chrono::steady_clock::now();
  try {
    if (app.got_subcommand(roots)) {
      cfg.command = "roots info";
      return run_roots(cfg);
    }
    if (app.got_subcommand(group)) {
      bool do_mul = group->got_subcommand(gmul);
      cfg.command = do_mul ? "group mul" : "group eval";
      return run_group(cfg, do_mul);
    }
    if (app.got_subcommand(dec)) {
      cfg.command = "decompose " + mode;
      return run_decompose(cfg, mode);
    }
    if (app.got_subcommand(aut)) {
      bool do_apply = aut->got_subcommand(aapply);
      cfg.command = do_apply ? "aut apply" : "aut verify";
      return run_aut(cfg, do_apply);
    }
    if (app.got_subcommand(verify)) {
      cfg.command = "verify lemma";
      return run_lemma(cfg);
    }
    if (app.got_subcommand(sha)) {
      cfg.command = "sha";
      return run_sha(cfg);
    }
    if (app.got_subcommand(lie)) {
      cfg.command = "lie check";
      return run_lie_check(cfg);
    }
    if (app.got_subcommand(cache)) {
      cfg.command = "cache";
      return run_cache(cfg);
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const TooLargeError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const WeylTooLargeError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const GroupTooLargeError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const RingError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidTypeError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ContextMismatchError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const AutosError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return 4;
  }
}
