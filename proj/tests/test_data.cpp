#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "rankvote/data.hpp"
#include "test_util.hpp"

using namespace rankvote;
using namespace rankvote::data;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& contents) {
        path = testutil::temp_path(".csv");
        std::ofstream out(path);
        out << contents;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

SchemaSpec mixed_schema() {
    SchemaSpec schema;
    schema.label_column = "y";
    schema.columns = {{"color", ColumnType::categorical, true},
                      {"size", ColumnType::numerical, true}};
    return schema;
}

}  // namespace

TEST_CASE("bundled fixtures load with the expected shapes") {
    SUBCASE("iris") {
        const auto ds = load_csv(testutil::data_file("iris.csv"),
                                 SchemaSpec::from_json_file(testutil::data_file("iris.schema.json")));
        CHECK(ds.num_rows() == 150);
        CHECK(ds.num_features() == 4);
        CHECK(ds.m == 3);
        CHECK(ds.class_names == std::vector<std::string>{"setosa", "versicolor", "virginica"});
        CHECK(ds.class_histogram() == std::vector<int>{50, 50, 50});
    }
    SUBCASE("wine") {
        const auto ds = load_csv(testutil::data_file("wine.csv"),
                                 SchemaSpec::from_json_file(testutil::data_file("wine.schema.json")));
        CHECK(ds.num_rows() == 178);
        CHECK(ds.num_features() == 13);
        CHECK(ds.m == 3);
    }
    SUBCASE("balance-scale") {
        const auto ds = load_csv(
            testutil::data_file("balance-scale.csv"),
            SchemaSpec::from_json_file(testutil::data_file("balance-scale.schema.json")));
        CHECK(ds.num_rows() == 625);
        CHECK(ds.num_features() == 4);
        CHECK(ds.m == 3);
        CHECK(ds.class_histogram() == std::vector<int>{49, 288, 288});  // B, L, R
    }
}

TEST_CASE("numeric columns are min-max scaled to [0,1]") {
    const auto ds = load_csv(testutil::data_file("iris.csv"),
                             SchemaSpec::from_json_file(testutil::data_file("iris.schema.json")));
    for (int f = 0; f < ds.num_features(); ++f) {
        double lo = 1e9, hi = -1e9;
        for (const auto& row : ds.rows) {
            lo = std::min(lo, row[static_cast<size_t>(f)]);
            hi = std::max(hi, row[static_cast<size_t>(f)]);
        }
        CHECK(lo == 0.0);
        CHECK(hi == 1.0);
    }
}

TEST_CASE("missing values are imputed") {
    TempCsv file(
        "color,size,y\n"
        "red,1.0,a\n"
        "red,2.0,a\n"
        "blue,?,b\n"
        "?,10.0,b\n"
        "blue,3.0,a\n");
    const auto ds = load_csv(file.path, mixed_schema());
    CHECK(ds.num_rows() == 5);
    // Mode of color is red (2 red vs 2 blue -> tie toward the smaller
    // token, which is "blue"... counts: red 2, blue 2, tie -> smallest).
    CHECK(ds.decode_feature(0, ds.rows[3][0]) == "blue");
    // Median of sizes {1, 2, 10, 3} = 2.5, scaled between min 1 and max 10.
    CHECK(ds.rows[2][1] == doctest::Approx((2.5 - 1.0) / 9.0));

    SUBCASE("missing rejected when the column forbids it") {
        auto schema = mixed_schema();
        schema.columns[1].missing_allowed = false;
        CHECK_THROWS_WITH_AS(load_csv(file.path, schema), doctest::Contains("row 4"),
                             std::invalid_argument);
    }
}

TEST_CASE("constant numeric columns scale to zero") {
    TempCsv file("x,y\n5,a\n5,b\n5,a\n");
    SchemaSpec schema;
    schema.label_column = "y";
    schema.columns = {{"x", ColumnType::numerical, true}};
    const auto ds = load_csv(file.path, schema);
    for (const auto& row : ds.rows) CHECK(row[0] == 0.0);
}

TEST_CASE("categorical encoding round trip") {
    TempCsv file("color,size,y\ngreen,1,a\nred,2,b\nblue,3,a\n");
    const auto ds = load_csv(file.path, mixed_schema());
    CHECK(ds.feature_categories[0] == std::vector<std::string>{"blue", "green", "red"});
    CHECK(ds.decode_feature(0, ds.rows[0][0]) == "green");
    CHECK(ds.decode_feature(0, ds.rows[1][0]) == "red");
    CHECK(ds.decode_feature(0, ds.rows[2][0]) == "blue");
}

TEST_CASE("malformed input produces errors naming the row") {
    SUBCASE("field count mismatch") {
        TempCsv file("color,size,y\nred,1.0\n");
        CHECK_THROWS_WITH_AS(load_csv(file.path, mixed_schema()), doctest::Contains("row 2"),
                             std::invalid_argument);
    }
    SUBCASE("unparsable number") {
        TempCsv file("color,size,y\nred,big,a\nred,1,b\n");
        CHECK_THROWS_WITH_AS(load_csv(file.path, mixed_schema()), doctest::Contains("'big'"),
                             std::invalid_argument);
    }
    SUBCASE("missing label") {
        TempCsv file("color,size,y\nred,1.0,a\nred,1.0,\n");
        CHECK_THROWS_WITH_AS(load_csv(file.path, mixed_schema()), doctest::Contains("row 3"),
                             std::invalid_argument);
    }
    SUBCASE("single-class data is rejected") {
        TempCsv file("color,size,y\nred,1.0,a\nblue,2.0,a\n");
        CHECK_THROWS_AS(load_csv(file.path, mixed_schema()), std::invalid_argument);
    }
    SUBCASE("unknown column in schema") {
        TempCsv file("color,size,y\nred,1.0,a\nblue,2.0,b\n");
        auto schema = mixed_schema();
        schema.columns.push_back({"weight", ColumnType::numerical, true});
        CHECK_THROWS_AS(load_csv(file.path, schema), std::invalid_argument);
    }
}

TEST_CASE("stratified k-fold") {
    const auto ds = load_csv(testutil::data_file("iris.csv"),
                             SchemaSpec::from_json_file(testutil::data_file("iris.schema.json")));

    SUBCASE("iris splits into ten folds of 15, five per class") {
        const auto plan = stratified_kfold(ds, 10, 1);
        CHECK(plan.k() == 10);
        for (const auto& fold : plan.folds) {
            CHECK(fold.size() == 15);
            std::vector<int> counts(3, 0);
            for (int idx : fold) counts[static_cast<size_t>(ds.labels[static_cast<size_t>(idx)])] += 1;
            CHECK(counts == std::vector<int>{5, 5, 5});
        }
    }
    SUBCASE("folds partition the rows") {
        const auto plan = stratified_kfold(ds, 7, 3);
        std::vector<int> seen(static_cast<size_t>(ds.num_rows()), 0);
        for (const auto& fold : plan.folds) {
            for (int idx : fold) seen[static_cast<size_t>(idx)] += 1;
        }
        CHECK(std::count(seen.begin(), seen.end(), 1) == ds.num_rows());
    }
    SUBCASE("per-class fold counts deviate by at most one") {
        const auto plan = stratified_kfold(ds, 7, 3);
        for (int c = 0; c < ds.m; ++c) {
            int lo = ds.num_rows(), hi = 0;
            for (const auto& fold : plan.folds) {
                int count = 0;
                for (int idx : fold) count += ds.labels[static_cast<size_t>(idx)] == c;
                lo = std::min(lo, count);
                hi = std::max(hi, count);
            }
            CHECK(hi - lo <= 1);
        }
    }
    SUBCASE("k=1 is the whole set") {
        const auto plan = stratified_kfold(ds, 1, 0);
        CHECK(plan.k() == 1);
        CHECK(static_cast<int>(plan.folds[0].size()) == ds.num_rows());
    }
    SUBCASE("same seed, same plan; different seed, different plan") {
        const auto a = stratified_kfold(ds, 10, 5);
        const auto b = stratified_kfold(ds, 10, 5);
        const auto c = stratified_kfold(ds, 10, 6);
        CHECK(a.folds == b.folds);
        CHECK(a.folds != c.folds);
    }
    SUBCASE("k above the smallest class count is rejected") {
        CHECK_THROWS_AS(stratified_kfold(ds, 51, 0), std::invalid_argument);
    }
}

TEST_CASE("stratified split keeps at least one sample per class on each side") {
    const auto ds = load_csv(testutil::data_file("iris.csv"),
                             SchemaSpec::from_json_file(testutil::data_file("iris.schema.json")));
    std::vector<int> all(static_cast<size_t>(ds.num_rows()));
    std::iota(all.begin(), all.end(), 0);
    const auto [taken, rest] = stratified_split(ds, all, 0.10, 9);
    CHECK(taken.size() + rest.size() == all.size());
    CHECK(taken.size() == 15);  // 10% of each class of 50
    std::vector<int> counts(3, 0);
    for (int idx : taken) counts[static_cast<size_t>(ds.labels[static_cast<size_t>(idx)])] += 1;
    CHECK(counts == std::vector<int>{5, 5, 5});
}

TEST_CASE("f1 scores") {
    CHECK(f1_score({0, 1, 0, 1}, {0, 1, 0, 1}, F1Mode::binary) == 1.0);
    CHECK(f1_score({0, 1, 0, 1}, {1, 0, 1, 0}, F1Mode::binary) == 0.0);
    // truth AABB, predicted ABBB: precision 2/3, recall 1 for the positive
    // class.
    CHECK(f1_score({0, 0, 1, 1}, {0, 1, 1, 1}, F1Mode::binary) == doctest::Approx(0.8));
    CHECK(f1_score({0, 1, 2, 0, 1, 2}, {0, 1, 2, 0, 1, 2}, F1Mode::macro) == 1.0);
    // Classes absent from the truth are ignored: only class 0 and 1 count.
    CHECK(f1_score({0, 0, 1, 1}, {0, 0, 2, 2}, F1Mode::macro) ==
          doctest::Approx(0.5 * (1.0 + 0.0)));
    CHECK_THROWS_AS(f1_score({0, 1}, {0}, F1Mode::macro), std::invalid_argument);
}
