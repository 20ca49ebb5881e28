#include "vchc/instance.hpp"

#include <doctest.h>

using namespace vchc;

namespace {

const char* kMinimalDoc = R"({"num_vertices":2,"k":[1,1],"m":[1,1],"edges":[[0,1]]})";

Instance star3() {
    Instance inst;
    inst.num_vertices = 4;
    inst.edges = {{0, 1}, {0, 2}, {0, 3}};
    inst.k = {3, 1, 1, 1};
    inst.m = {1, 0, 0, 0};
    return inst;
}

}  // namespace

TEST_CASE("parse minimal instance and round-trip byte-exactly") {
    Instance inst = parse_instance(kMinimalDoc);
    CHECK(inst.num_vertices == 2);
    CHECK(inst.rank() == 2);
    CHECK(serialize_instance(inst) == kMinimalDoc);
}

TEST_CASE("parse single hyperedge") {
    Instance inst = parse_instance(
        R"({"num_vertices":3,"k":[1,1,1],"m":[1,1,1],"edges":[[0,1,2]]})");
    CHECK(inst.rank() == 3);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_instance("not json"), ParseError);
    CHECK_THROWS_AS(
        parse_instance(R"({"num_vertices":1,"k":[1],"m":[1],"edges":[[0,0]]})"),
        ParseError);  // duplicate vertex within an edge
    CHECK_THROWS_AS(
        parse_instance(R"({"num_vertices":1,"k":[1],"m":[1],"edges":[[3]]})"),
        ParseError);  // vertex out of range
    CHECK_THROWS_AS(
        parse_instance(R"({"num_vertices":2,"k":[1],"m":[1,1],"edges":[]})"),
        ParseError);  // k length mismatch
    CHECK_THROWS_AS(
        parse_instance(R"({"num_vertices":1,"k":[1],"m":[1],"edges":[[]]})"),
        ParseError);  // empty edge
    CHECK_THROWS_AS(
        parse_instance(R"({"num_vertices":1,"k":[1],"m":[1],"edges":[],"zz":1})"),
        ParseError);  // unknown key would break round-tripping
}

TEST_CASE("rank over edge mixes") {
    Instance inst;
    inst.num_vertices = 3;
    inst.k = {1, 1, 1};
    inst.m = {1, 1, 1};
    inst.edges = {{0, 1}};
    CHECK(inst.rank() == 2);
    inst.edges = {{0, 1}, {0, 1, 2}};
    CHECK(inst.rank() == 3);
    inst.edges = {};
    CHECK(inst.rank() == 0);
}

TEST_CASE("is_coverable") {
    Instance inst = parse_instance(kMinimalDoc);
    CHECK(is_coverable(inst));

    Instance zero = inst;
    zero.k = {0, 0};
    zero.m = {5, 5};
    CHECK_FALSE(is_coverable(zero));

    CHECK(is_coverable(star3()));  // center alone covers all three edges
}

TEST_CASE("generator determinism and contract") {
    GenParams p;
    p.num_vertices = 4;
    p.num_edges = 5;
    p.max_edge_size = 2;
    p.max_capacity = 3;
    p.max_mult = 2;
    Instance a = generate_random(p, 7);
    Instance b = generate_random(p, 7);
    CHECK(a == b);
    CHECK(serialize_instance(a) == serialize_instance(b));
    CHECK(is_coverable(a));
    CHECK_NOTHROW(a.validate());

    Instance c = generate_random(p, 8);
    CHECK(serialize_instance(c) != serialize_instance(a));
}

TEST_CASE("generator respects the edge-size cap") {
    GenParams p;
    p.num_vertices = 6;
    p.num_edges = 10;
    p.max_edge_size = 3;
    p.max_capacity = 4;
    p.max_mult = 3;
    Instance inst = generate_random(p, 1);
    CHECK(inst.rank() <= 3);
    for (const auto& e : inst.edges) CHECK(!e.empty());
    CHECK(is_coverable(inst));
}

TEST_CASE("generated instances round-trip through the document form") {
    GenParams p;
    p.num_vertices = 5;
    p.num_edges = 6;
    p.max_edge_size = 3;
    p.max_capacity = 2;
    p.max_mult = 2;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Instance inst = generate_random(p, seed);
        CHECK(parse_instance(serialize_instance(inst)) == inst);
    }
}

TEST_CASE("solution document round-trip") {
    CoverSolution sol;
    sol.x = {1, 0};
    sol.y = {{0, 0}};
    std::string doc = serialize_solution(sol);
    CHECK(doc == R"({"x":[1,0],"y":[[0,0]]})");
    CHECK(parse_solution(doc) == sol);
}
