#include <doctest.h>

#include <filesystem>

#include "modsup/coordination.hpp"
#include "modsup/io.hpp"
#include "modsup/random.hpp"
#include "support.hpp"

using namespace testing;

namespace {

// Words up to `bound` in ∥ P_{i+κ}(K) but not in K, by enumeration over Σ.
bool oracle_decomposable(const Automaton& spec, const std::vector<EventSet>& alphabets, const EventSet& kappa,
                         int bound) {
  const auto k = marked(spec, bound);
  std::vector<std::set<Word>> local;
  for (const auto& a : alphabets) {
    std::set<Word> p;
    const EventSet ak = set_union(a, kappa);
    for (const auto& w : k) p.insert(project_word(w, ak));
    local.push_back(std::move(p));
  }
  const EventSet alphabet = spec.alphabet();
  const std::vector<Event> sigma(alphabet.begin(), alphabet.end());
  std::vector<Word> frontier{Word{}};
  for (int len = 0; len <= bound; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      bool in_all = true;
      for (std::size_t i = 0; i < alphabets.size() && in_all; ++i)
        in_all = local[i].count(project_word(w, set_union(alphabets[i], kappa))) > 0;
      if (in_all && !k.count(w)) return false;
      for (const auto& e : sigma) {
        Word x = w;
        x.push_back(e);
        next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  return true;
}

}  // namespace

TEST_SUITE("coordination") {
  TEST_CASE("kappa equal to the whole alphabet is always decomposable") {
    Railroad rr;
    const auto alpha = rr.global_system().alphabets();
    const auto v = is_conditionally_decomposable(rr.global, std::span<const EventSet>(alpha), rr.global.alphabet());
    CHECK(v.status == Status::Holds);
    CHECK(v.name == "conditional-decomposability");
  }

  TEST_CASE("interleaving that the modules cannot enforce alone") {
    const Automaton k = chain("K", events("a b"), "a b", false);
    const std::vector<EventSet> alpha{events("a"), events("b")};
    const auto v = is_conditionally_decomposable(k, std::span<const EventSet>(alpha), {});
    CHECK(v.failed());
    CHECK(v.witness == std::vector<std::string>{"b a"});
    CHECK_FALSE(oracle_decomposable(k, alpha, {}, 4));
    CHECK(is_conditionally_decomposable(k, std::span<const EventSet>(alpha), events("a")).passed());
    CHECK(extend_kappa(k, std::span<const EventSet>(alpha), {}, events("b")) == events("b"));
    CHECK(extend_kappa(k, std::span<const EventSet>(alpha), {}, {}) == events("a"));
  }

  TEST_CASE("kappa must contain the shared events and stay in the alphabet") {
    Counterexample cx;
    const Automaton k = parallel(std::span<const Automaton>(cx.specs));
    const auto alpha = cx.system().alphabets();
    const std::span<const EventSet> a(alpha);
    CHECK_THROWS_AS(is_conditionally_decomposable(k, a, events("u")), Error);
    CHECK_THROWS_AS(is_conditionally_decomposable(k, a, events("c u zz")), Error);
    CHECK_THROWS_AS(extend_kappa(k, a, events("c"), {}), Error);
    const std::vector<EventSet> short_alpha{events("u1 u c")};
    CHECK_THROWS_AS(is_conditionally_decomposable(k, std::span<const EventSet>(short_alpha), {}), AlphabetMismatch);
  }

  TEST_CASE("railroad with the wait events as kappa") {
    Railroad rr;
    const auto alpha = rr.global_system().alphabets();
    const std::span<const EventSet> a(alpha);
    const EventSet kappa = events("w_w w_e");
    CHECK(is_conditionally_decomposable(rr.global, a, kappa).passed());
    CHECK(oracle_decomposable(rr.global, alpha, kappa, 6));
    CHECK(is_conditionally_decomposable(rr.global, a, {}).failed());
    CHECK_FALSE(oracle_decomposable(rr.global, alpha, {}, 6));

    const Automaton coord = build_coordinator(std::span<const Automaton>(rr.plants), kappa);
    CHECK(coord.alphabet() == kappa);
    Automaton all(std::string("all"), kappa);
    all.set_initial(all.add_state("0", true));
    all.add_transition(0, "w_w", 0);
    all.add_transition(0, "w_e", 0);
    CHECK(language_equal(coord, all).holds());
  }

  TEST_CASE("localization of the railroad") {
    Railroad rr;
    const CoordinationPlan plan = localize(rr.global_system(), events("w_w w_e"));
    CHECK(plan.localized_plants.size() == 2);
    CHECK(plan.local_alphabets[0] == events("w_w a_w e_w l_w w_e"));
    CHECK(plan.localized_plants[0].name() == "L1+k");
    CHECK(plan.localized_specs[1].name() == "K2+k");
    for (const auto& c : plan.certificates) CHECK(c.passed());
    CHECK(plan.certificates.size() == 5);
    CHECK(language_equal(parallel(std::span<const Automaton>(plan.localized_specs)), rr.global).marked.holds);

    const ModularSystem local = localized_system(plan, rr.table);
    CHECK(local.has_local_specs());
    REQUIRE(local.kappa);
    CHECK(*local.kappa == events("w_w w_e"));
    CHECK_THROWS_AS(localize(rr.global_system(), {}), Error);
    CHECK_THROWS_AS(localize(rr.local_system(), events("w_w w_e")), Error);
  }

  TEST_CASE("single module and full kappa localize trivially") {
    Railroad rr;
    ModularSystem one;
    one.table = rr.table;
    one.modules.push_back({rr.plants[0], std::nullopt});
    one.global_spec = rr.specs[0];
    const CoordinationPlan p1 = localize(one, {});
    CHECK(language_equal(p1.localized_specs[0], rr.specs[0]).marked.holds);
    CHECK(language_equal(mark_all(p1.localized_plants[0]), mark_all(rr.plants[0])).generated.holds);

    const ModularSystem m = rr.global_system();
    const CoordinationPlan full = localize(m, m.alphabet());
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(language_equal(full.localized_specs[i], trim(rr.global)).marked.holds);
  }

  TEST_CASE("plan files") {
    Railroad rr;
    const CoordinationPlan plan = localize(rr.global_system(), events("w_w w_e"));
    const auto dir = std::filesystem::temp_directory_path() / "modsup_plan_test";
    std::filesystem::remove_all(dir);
    write_plan(plan, rr.table, dir);
    for (const char* f : {"coordinator.aut", "plant_1.aut", "plant_2.aut", "spec_1.aut", "spec_2.aut", "plan.txt"})
      CHECK(std::filesystem::exists(dir / f));
    const std::string txt = read_file(dir / "plan.txt");
    CHECK(txt.find("kappa=w_e,w_w\n") == 0);
    CHECK(txt.find("certificate.conditional-decomposability=holds") != std::string::npos);
    const auto back = load_automaton(dir / "spec_1.aut");
    CHECK(language_equal(back.automaton, plan.localized_specs[0]).holds());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("random agreement of decomposability with enumeration") {
    random::Rng rng(1357);
    int disagreements = 0, failures = 0;
    for (int round = 0; round < 60; ++round) {
      random::SystemOptions o;
      o.global_spec = true;
      o.prefix_closed_specs = round % 2 == 0;
      o.plant.acyclic = true;
      o.plant.max_states = 4;
      o.event_pool = 4;
      const ModularSystem m = random::random_system(rng, o);
      const auto alpha = m.alphabets();
      const Automaton spec = trim(*m.global_spec);
      const EventSet kappa = shared_alphabet(std::span<const EventSet>(alpha));
      const bool got = is_conditionally_decomposable(spec, std::span<const EventSet>(alpha), kappa).passed();
      disagreements += got != oracle_decomposable(spec, alpha, kappa, 6);
      failures += !got;
      const EventSet ext = extend_kappa(spec, std::span<const EventSet>(alpha), kappa, m.table.observable_events());
      CHECK(is_subset(kappa, ext));
      CHECK(oracle_decomposable(spec, alpha, ext, 6));
    }
    CHECK(disagreements == 0);
    MESSAGE("non-decomposable instances: " << failures);
  }
}
