#include <cmath>
#include <cstdlib>
#include <string>

#include "headingsim/data.hpp"
#include "headingsim/errors.hpp"
#include "headingsim/textio.hpp"

namespace hsim {

namespace {

constexpr const char* kDatasetMagic = "headingsim.dataset.v1";

bool yaw_in_range(double yaw) { return yaw > -kPi && yaw <= kPi; }

[[noreturn]] void fail_line(std::size_t line_no, const std::string& msg) {
  throw ValidationError("dataset line " + std::to_string(line_no) + ": " + msg);
}

double field_double(std::string_view f, std::size_t line_no, const char* name) {
  double v;
  try {
    v = parse_double(f);
  } catch (const FormatError&) {
    throw FormatError("dataset line " + std::to_string(line_no) +
                      ": unparseable " + name + " '" + std::string(f) + "'");
  }
  if (!std::isfinite(v)) {
    fail_line(line_no, std::string("non-finite ") + name);
  }
  return v;
}

}  // namespace

std::string serialize_dataset(const Dataset& ds) {
  std::string out;
  out += kDatasetMagic;
  out += " count=" + std::to_string(ds.samples.size());
  out += " width=" + fmt_double(ds.frame_w);
  out += " height=" + fmt_double(ds.frame_h);
  out += " fingerprint=" + to_hex16(ds.fingerprint);
  out += '\n';
  for (const Sample& s : ds.samples) {
    out += std::to_string(s.frame_index);
    out += ' ';
    out += fmt_double(s.uav.x) + ' ' + fmt_double(s.uav.y) + ' ' +
           fmt_double(s.uav.z) + ' ' + fmt_double(s.uav.yaw);
    out += ' ';
    out += fmt_double(s.ugv.x) + ' ' + fmt_double(s.ugv.y) + ' ' +
           fmt_double(s.ugv.z) + ' ' + fmt_double(s.ugv.yaw);
    out += ' ';
    out += fmt_double(s.bbox.x1) + ' ' + fmt_double(s.bbox.y1) + ' ' +
           fmt_double(s.bbox.x2) + ' ' + fmt_double(s.bbox.y2);
    out += ' ';
    out += fmt_double(s.feat.cx) + ' ' + fmt_double(s.feat.cy) + ' ' +
           fmt_double(s.feat.area) + ' ' + fmt_double(s.feat.aspect);
    out += ' ';
    out += fmt_double(s.theta);
    out += ' ';
    out += to_string(s.split);
    out += '\n';
  }
  return out;
}

Dataset deserialize_dataset(const std::string& text) {
  std::size_t pos = text.find('\n');
  if (pos == std::string::npos) {
    throw FormatError("dataset: missing header line");
  }
  const auto header = split_fields(std::string_view(text).substr(0, pos));
  if (header.size() != 5 || header[0] != kDatasetMagic) {
    throw FormatError("dataset: bad header (expected '" +
                      std::string(kDatasetMagic) + " count=... width=... "
                      "height=... fingerprint=...')");
  }
  auto header_value = [&](std::size_t idx, const char* key) {
    const std::string_view f = header[idx];
    const std::string_view k(key);
    if (f.size() <= k.size() + 1 || f.substr(0, k.size()) != k ||
        f[k.size()] != '=') {
      throw FormatError("dataset header: expected '" + std::string(key) +
                        "=' field");
    }
    return f.substr(k.size() + 1);
  };

  Dataset ds;
  const long long count = parse_int(header_value(1, "count"));
  ds.frame_w = parse_double(header_value(2, "width"));
  ds.frame_h = parse_double(header_value(3, "height"));
  ds.fingerprint = parse_hex64(header_value(4, "fingerprint"));
  if (count < 0) throw FormatError("dataset header: negative count");
  if (!(ds.frame_w > 0.0) || !(ds.frame_h > 0.0)) {
    throw FormatError("dataset header: non-positive frame size");
  }

  CameraModel cam;
  cam.width_px = ds.frame_w;
  cam.height_px = ds.frame_h;

  ds.samples.reserve(static_cast<std::size_t>(count));
  SplitCounts census;
  long long prev_frame = -1;
  std::size_t line_no = 1;
  std::size_t start = pos + 1;
  const std::string_view sv(text);
  while (start < sv.size()) {
    ++line_no;
    std::size_t nl = sv.find('\n', start);
    if (nl == std::string_view::npos) nl = sv.size();
    const std::string_view line = sv.substr(start, nl - start);
    start = nl + 1;
    if (line.empty()) fail_line(line_no, "empty line");

    const auto f = split_fields(line);
    if (f.size() != 19) {
      throw FormatError("dataset line " + std::to_string(line_no) + ": got " +
                        std::to_string(f.size()) + " fields, expected 19");
    }

    Sample s;
    try {
      s.frame_index = parse_int(f[0]);
    } catch (const FormatError&) {
      throw FormatError("dataset line " + std::to_string(line_no) +
                        ": unparseable frame_index");
    }
    s.uav.x = field_double(f[1], line_no, "uav.x");
    s.uav.y = field_double(f[2], line_no, "uav.y");
    s.uav.z = field_double(f[3], line_no, "uav.z");
    s.uav.yaw = field_double(f[4], line_no, "uav.yaw");
    s.ugv.x = field_double(f[5], line_no, "ugv.x");
    s.ugv.y = field_double(f[6], line_no, "ugv.y");
    s.ugv.z = field_double(f[7], line_no, "ugv.z");
    s.ugv.yaw = field_double(f[8], line_no, "ugv.yaw");
    s.bbox.x1 = field_double(f[9], line_no, "bbox.x1");
    s.bbox.y1 = field_double(f[10], line_no, "bbox.y1");
    s.bbox.x2 = field_double(f[11], line_no, "bbox.x2");
    s.bbox.y2 = field_double(f[12], line_no, "bbox.y2");
    s.feat.cx = field_double(f[13], line_no, "feat.cx");
    s.feat.cy = field_double(f[14], line_no, "feat.cy");
    s.feat.area = field_double(f[15], line_no, "feat.area");
    s.feat.aspect = field_double(f[16], line_no, "feat.aspect");
    s.theta = field_double(f[17], line_no, "theta");
    try {
      s.split = split_from_string(std::string(f[18]));
    } catch (const FormatError&) {
      fail_line(line_no, "unknown split '" + std::string(f[18]) + "'");
    }

    if (s.frame_index <= prev_frame) {
      fail_line(line_no, "frame_index not strictly increasing");
    }
    prev_frame = s.frame_index;
    if (s.uav.z < 0.0 || s.ugv.z < 0.0) fail_line(line_no, "negative z");
    if (!yaw_in_range(s.uav.yaw) || !yaw_in_range(s.ugv.yaw)) {
      fail_line(line_no, "yaw outside (-pi, pi]");
    }
    if (!s.bbox.valid_in(ds.frame_w, ds.frame_h)) {
      fail_line(line_no, "bbox violates frame bounds or ordering");
    }

    const FeatureVec expect = extract_features(s.bbox, cam);
    if (expect.cx != s.feat.cx || expect.cy != s.feat.cy ||
        expect.area != s.feat.area || expect.aspect != s.feat.aspect) {
      fail_line(line_no, "features do not recompute from bbox");
    }
    double expect_theta;
    try {
      expect_theta = relative_heading(s.uav, s.ugv);
    } catch (const DomainError&) {
      fail_line(line_no, "coincident uav and ugv positions");
    }
    if (expect_theta != s.theta) {
      fail_line(line_no, "theta does not recompute from poses");
    }

    switch (s.split) {
      case Split::kTrain: ++census.train; break;
      case Split::kVal: ++census.val; break;
      case Split::kTest: ++census.test; break;
    }
    ds.samples.push_back(s);
  }

  if (static_cast<long long>(ds.samples.size()) != count) {
    throw FormatError("dataset: header count " + std::to_string(count) +
                      " does not match " + std::to_string(ds.samples.size()) +
                      " records");
  }

  const SplitCounts want = expected_split_counts(count);
  if (std::llabs(census.train - want.train) > 1 ||
      std::llabs(census.val - want.val) > 1 ||
      std::llabs(census.test - want.test) > 1) {
    throw ValidationError(
        "dataset split census " + std::to_string(census.train) + "/" +
        std::to_string(census.val) + "/" + std::to_string(census.test) +
        " deviates from the 80/10/10 floor rule (" +
        std::to_string(want.train) + "/" + std::to_string(want.val) + "/" +
        std::to_string(want.test) + ") by more than one sample");
  }
  return ds;
}

void save_dataset(const std::string& path, const Dataset& ds) {
  write_text_file(path, serialize_dataset(ds));
}

Dataset load_dataset(const std::string& path) {
  return deserialize_dataset(read_text_file(path));
}

}  // namespace hsim
