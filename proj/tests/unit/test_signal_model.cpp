#include "octrack/types.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace octrack;

TEST_CASE("validate_frame accepts an all-zero frame unchanged") {
  MScanFrame frame;
  frame.data = ArrayXXf::Zero(512, 512);
  const MScanFrame& same = validate_frame(frame);
  CHECK(&same == &frame);
  CHECK(same.width() == 512);
  CHECK(same.depth() == 512);
}

TEST_CASE("frame_from_columns reports the offending column on a ragged input") {
  std::vector<ArrayXf> cols(32, ArrayXf::Zero(64));
  cols[17] = ArrayXf::Zero(63);
  CHECK_THROWS_WITH_AS(frame_from_columns(cols), doctest::Contains("column 17"),
                       FrameError);
}

TEST_CASE("validate_frame rejects non-finite and negative samples") {
  MScanFrame frame;
  frame.data = ArrayXXf::Zero(16, 8);

  SUBCASE("NaN") {
    frame.data(3, 5) = std::numeric_limits<float>::quiet_NaN();
    CHECK_THROWS_WITH_AS(validate_frame(frame), doctest::Contains("non-finite"),
                         FrameError);
  }
  SUBCASE("infinity") {
    frame.data(0, 0) = std::numeric_limits<float>::infinity();
    CHECK_THROWS_AS(validate_frame(frame), FrameError);
  }
  SUBCASE("negative") {
    frame.data(1, 2) = -1.0f;
    CHECK_THROWS_WITH_AS(validate_frame(frame), doctest::Contains("negative"),
                         FrameError);
  }
  SUBCASE("empty") {
    frame.data.resize(0, 0);
    CHECK_THROWS_AS(validate_frame(frame), FrameError);
  }
}

TEST_CASE("accepted frames satisfy the type invariants directly") {
  MScanFrame frame;
  frame.data = ArrayXXf::Random(32, 24).abs() * 100.0f;
  validate_frame(frame);
  for (Index k = 0; k < frame.width(); ++k) {
    const AScanColumn col = column_view(frame, k);
    CHECK(col.index == k);
    CHECK(col.intensities.size() == frame.depth());
    for (Index row = 0; row < frame.depth(); ++row) {
      CHECK(std::isfinite(col.intensities[row]));
      CHECK(col.intensities[row] >= 0.0f);
    }
  }
  CHECK_THROWS_AS(column_view(frame, 24), std::out_of_range);
  CHECK_THROWS_AS(column_view(frame, -1), std::out_of_range);
}

TEST_CASE("observation constructors enforce finite depths") {
  const BoundaryObservation obs = valid_obs(LayerId::DM, 7, 123.25);
  CHECK(obs.status == ObsStatus::Valid);
  CHECK(obs.depth_px == 123.25);
  CHECK_THROWS_AS(valid_obs(LayerId::DM, 0, std::nan("")), std::invalid_argument);

  const BoundaryObservation gap = dropout_obs(LayerId::Epithelium, 3);
  CHECK(gap.status == ObsStatus::Dropout);
}

TEST_CASE("layer and status names round-trip") {
  CHECK(layer_from_name(layer_name(LayerId::Epithelium)) == LayerId::Epithelium);
  CHECK(layer_from_name(layer_name(LayerId::DM)) == LayerId::DM);
  CHECK(status_from_name(status_name(ObsStatus::Dropout)) == ObsStatus::Dropout);
  CHECK_THROWS_AS(layer_from_name("stroma"), std::invalid_argument);
  CHECK_THROWS_AS(status_from_name("maybe"), std::invalid_argument);
}

TEST_CASE("raw_estimates holds the last valid depth across dropouts") {
  BoundaryTrace trace;
  trace.layer = LayerId::Epithelium;
  trace.raw = {dropout_obs(LayerId::Epithelium, 0),
               valid_obs(LayerId::Epithelium, 1, 10.0),
               dropout_obs(LayerId::Epithelium, 2),
               dropout_obs(LayerId::Epithelium, 3),
               valid_obs(LayerId::Epithelium, 4, 12.0)};
  const ArrayXd est = raw_estimates(trace);
  CHECK(est[0] == 0.0);
  CHECK(est[1] == 10.0);
  CHECK(est[2] == 10.0);
  CHECK(est[3] == 10.0);
  CHECK(est[4] == 12.0);
}
