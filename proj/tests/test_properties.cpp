// Reduced-count runs of the property suites; the acceptance binary runs the
// full counts.
#include "doctest.h"
#include "properties.hpp"

using testsupport::fixture;

TEST_CASE("scheduler outputs satisfy the allocation constraints") {
    auto t = props::scheduler_constraints(1000, 101);
    CHECK_MESSAGE(t.ok(), t.summary());
}

TEST_CASE("MGMW and GMM agree without secondary interference") {
    auto t = props::mgmw_matches_gmm(200, 202);
    CHECK_MESSAGE(t.ok(), t.summary());
}

TEST_CASE("pooling bounds are ordered and their certificates check out") {
    for (const char* name : {"fig2", "fig5", "fig7a", "fig7a_literal", "tree"}) {
        auto p = props::pooling_checks(fixture(name), name);
        CHECK_MESSAGE(p.chain.ok(), p.chain.summary());
        CHECK_MESSAGE(p.witness.ok(), p.witness.summary());
    }
}

TEST_CASE("Max-Weight is stable inside the region") {
    for (const char* name : {"fig2", "fig5", "fig7a", "tree"}) {
        auto t = props::maxweight_stability(fixture(name), name, 2, 20000, 303);
        CHECK_MESSAGE(t.ok(), t.summary());
    }
}
