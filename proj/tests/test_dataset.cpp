#include <doctest.h>

#include <sstream>

#include "dfr/dataset.hpp"

using namespace dfr::dataset;

namespace {

const char* kGood =
    R"({"format":"rcts-v1","name":"toy","n_vars":2,"classes":["a","b"]})"
    "\n"
    R"({"id":"i0","label":"a","split":"train","series":[[1.0,2.0],[3.0,4.0]]})"
    "\n"
    R"({"id":"i1","label":"b","split":"test","series":[[5.0],[6.0]]})"
    "\n";

Dataset load_text(const std::string& text) {
    std::istringstream in(text);
    return load(in, "<mem>");
}

}  // namespace

TEST_CASE("well-formed file loads") {
    auto ds = load_text(kGood);
    CHECK(ds.name == "toy");
    CHECK(ds.n_vars == 2);
    CHECK(ds.train.size() == 1);
    CHECK(ds.test.size() == 1);
    CHECK(ds.train[0].series[1][1] == 4.0);
    CHECK(ds.t_min() == 1);
    CHECK(ds.t_max() == 2);
}

TEST_CASE("malformed fixtures are rejected with a line number") {
    auto expect_fail = [](const std::string& text, const char* fragment) {
        CHECK_THROWS_WITH_AS(load_text(text), doctest::Contains(fragment), std::runtime_error);
    };
    const std::string header = R"({"format":"rcts-v1","name":"t","n_vars":2,"classes":["a","b"]})";
    const std::string ok_inst =
        R"({"id":"i","label":"a","split":"train","series":[[1.0],[2.0]]})";

    expect_fail("", "empty file");
    expect_fail("{\"format\":\"bogus\"}\n", "<mem>:1");
    expect_fail("{not json\n", "malformed header");
    expect_fail(R"({"format":"rcts-v1","name":"t","n_vars":0,"classes":["a"]})" "\n",
                "zero variables");
    expect_fail(R"({"format":"rcts-v1","name":"t","n_vars":1,"classes":["a","a"]})" "\n",
                "duplicate class");
    // 3 channels under a 2-var header, error names line 2
    expect_fail(header + "\n" +
                    R"({"id":"i","label":"a","split":"train","series":[[1.0],[2.0],[3.0]]})" "\n",
                "<mem>:2");
    expect_fail(header + "\n" +
                    R"({"id":"i","label":"z","split":"train","series":[[1.0],[2.0]]})" "\n",
                "unknown label 'z'");
    expect_fail(header + "\n" +
                    R"({"id":"i","label":"a","split":"train","series":[[1.0,2.0],[3.0]]})" "\n",
                "ragged");
    expect_fail(header + "\n" +
                    R"({"id":"i","label":"a","split":"train","series":[[null],[1.0]]})" "\n",
                "malformed instance");
    expect_fail(header + "\n" +
                    R"({"id":"i","label":"a","split":"dev","series":[[1.0],[2.0]]})" "\n",
                "split must be");
    expect_fail(header + "\n" + R"({"id":"i","label":"a","split":"train","series":[[],[]]})" "\n",
                "empty series");
    expect_fail(header + "\n{broken\n", "<mem>:2");
}

TEST_CASE("save/load round trip is a fixpoint") {
    auto ds = load_text(kGood);
    std::ostringstream out;
    save(ds, out);
    auto ds2 = load_text(out.str());
    std::ostringstream out2;
    save(ds2, out2);
    CHECK(out.str() == out2.str());
    CHECK(ds2.train[0].series == ds.train[0].series);
    CHECK(ds2.classes == ds.classes);
}

TEST_CASE("serialized doubles reload bit-identically") {
    auto ds = load_text(kGood);
    ds.train[0].series[0][0] = 0.1 + 0.2;  // not exactly representable as short decimal
    ds.train[0].series[0][1] = 1.0 / 3.0;
    std::ostringstream out;
    save(ds, out);
    auto ds2 = load_text(out.str());
    CHECK(ds2.train[0].series[0][0] == ds.train[0].series[0][0]);
    CHECK(ds2.train[0].series[0][1] == ds.train[0].series[0][1]);
}

TEST_CASE("saving an empty train split fails") {
    auto ds = load_text(kGood);
    ds.train.clear();
    std::ostringstream out;
    CHECK_THROWS_WITH_AS(save(ds, out), doctest::Contains("empty split"), std::runtime_error);
}

TEST_CASE("synth determinism and shape") {
    SynthSpec spec;
    spec.seed = 7;
    auto a = synth(spec);
    auto b = synth(spec);
    REQUIRE(a.train.size() == b.train.size());
    for (std::size_t i = 0; i < a.train.size(); ++i)
        CHECK(a.train[i].series == b.train[i].series);

    spec.seed = 8;
    auto c = synth(spec);
    CHECK(a.train[0].series != c.train[0].series);
}

TEST_CASE("synth degenerate t range") {
    SynthSpec spec;
    spec.t_min = spec.t_max = 5;
    auto ds = synth(spec);
    for (const auto& i : ds.train) CHECK(i.length() == 5);
    for (const auto& i : ds.test) CHECK(i.length() == 5);
}

TEST_CASE("synth rejects invalid counts") {
    SynthSpec spec;
    spec.n_classes = 0;
    CHECK_THROWS_AS(synth(spec), std::invalid_argument);
    spec = {};
    spec.t_max = spec.t_min - 1;
    CHECK_THROWS_AS(synth(spec), std::invalid_argument);
}
