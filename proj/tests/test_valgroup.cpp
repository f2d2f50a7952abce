#include "doctest.h"

#include "ada/valvec.hpp"

using namespace ada;

static ValVec vv(std::vector<long> c) {
    std::vector<Rat> r;
    for (long x : c) r.emplace_back(x);
    return ValVec(std::move(r));
}

TEST_CASE("lexicographic order with infinity on top") {
    CHECK(vv({1, 0}) > vv({0, 5}));
    CHECK(vv({0, -3}) == vv({0, -3}));
    CHECK(vv({0, -3}) < ValVec::infinity());
    CHECK(ValVec::infinity() == ValVec::infinity());
    CHECK(vv({0, 0}) < vv({0, 1}));
    // compatible with addition
    CHECK(vv({0, 1}) + vv({1, -2}) == vv({1, -1}));
    CHECK((vv({0, 1}) < vv({1, 0})));
    CHECK((vv({0, 1}) + vv({-2, 7}) < vv({1, 0}) + vv({-2, 7})));
}

TEST_CASE("archimedean classes") {
    CHECK(arch_cmp(vv({1, 0}), vv({2, 7})) == std::strong_ordering::equal);
    CHECK(arch_cmp(vv({0, 1}), vv({1, 0})) == std::strong_ordering::less);
    ValVec g = vv({3, -2});
    CHECK(arch_cmp(g, Rat(2) * g) == std::strong_ordering::equal);
    CHECK_THROWS_AS(arch_cmp(vv({0, 0}), g), Precondition);
}

TEST_CASE("convex subgroups, Delta(m), coarsening") {
    ConvexSubgroup low{1}; // only the x-level
    CHECK(low.contains(vv({0, 5})));
    CHECK(!low.contains(vv({1, 0})));
    ValVec vm = vv({1, 0}); // v(e^-x)
    ConvexSubgroup d = delta_of(vm);
    CHECK(d.level == 1);
    CHECK(coarsen(vv({2, 9}), d) == vv({2, 0}));
    CHECK(coarsen(vv({0, 9}), d) == vv({0, 0}));
}

TEST_CASE("psi and flattening") {
    // psi(v(x^-1)) = v(x^-1), psi(v(e^-x)) = 0 at L=2
    CHECK(psi(vv({0, 1})) == vv({0, 1}));
    CHECK(psi(vv({1, 0})) == vv({0, 0}));
    CHECK(in_flat(vv({0, -7})));
    CHECK(!in_flat(vv({2, 1})));
    CHECK(max_psi(2) == vv({0, 1}));
    // L=3: psi of the top class is v((e^{e^x})^dagger) = -e_1
    CHECK(psi(ValVec({Rat(1), Rat(0), Rat(0)})) == ValVec({Rat(0), Rat(-1), Rat(0)}));
}

TEST_CASE("cut membership and bounds") {
    CutSpec down1{CutSpec::DownOf{ConvexSubgroup{1}}};
    CHECK(!down1.contains(vv({1, 0}))); // v(e^-x) exceeds every x-level value
    CHECK(down1.contains(vv({0, 100})));
    CHECK(down1.contains(vv({-1, 3})));
    auto [mem, bound] = cut_tests({vv({1, 0})}, down1, vv({0, 0}));
    CHECK(mem);   // 0 is in the downward closure
    CHECK(bound); // vacuous: (1,0) lies outside the cut

    CutSpec all{CutSpec::All{}};
    CHECK(cut_tests({}, all, vv({0, 0})).second);
    CHECK(!cut_tests({vv({0, -2})}, all, vv({0, -3})).second);
    CHECK(cut_tests({vv({0, -2})}, all, vv({0, -2})).second);
}

TEST_CASE("Below cut semantics") {
    CutSpec below{CutSpec::Below{vv({0, 0})}};
    CHECK(below.contains(vv({-1, 5})));
    CHECK(below.contains(vv({0, -1})));
    CHECK(!below.contains(vv({0, 0})));
    CHECK(!below.contains(vv({0, 1})));
    CHECK(below.shifted(vv({1, 1})).contains(vv({1, 0})));
    CHECK(below.max_positive_level(2) == std::nullopt);
    CutSpec below2{CutSpec::Below{vv({1, 0})}};
    CHECK(below2.max_positive_level(2) == 1);
    CHECK(CutSpec{CutSpec::All{}}.max_positive_level(2) == 1);
    CHECK(CutSpec{CutSpec::DownOf{ConvexSubgroup{1}}}.max_positive_level(2) == 0);
}
