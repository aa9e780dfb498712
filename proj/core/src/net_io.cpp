#include <sstream>

#include "headingsim/errors.hpp"
#include "headingsim/net.hpp"
#include "headingsim/textio.hpp"

namespace hsim {

namespace {

constexpr const char* kWeightsHeader = "headingsim.weights.v1";

void append_row(std::string& out, const double* v, int n) {
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += fmt_double(v[i]);
  }
  out += '\n';
}

struct LineReader {
  std::vector<std::string_view> lines;
  std::size_t next = 0;

  explicit LineReader(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) {
        if (start < text.size()) lines.push_back(text.substr(start));
        break;
      }
      lines.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  std::string_view take(const char* what) {
    if (next >= lines.size()) {
      throw FormatError(std::string("weights file truncated before ") + what);
    }
    return lines[next++];
  }
};

void read_row(LineReader& r, const char* what, double* v, int n) {
  auto fields = split_fields(r.take(what));
  if (static_cast<int>(fields.size()) != n) {
    throw FormatError(std::string("weights row for ") + what + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(n));
  }
  for (int i = 0; i < n; ++i) v[i] = parse_double(fields[i]);
}

double take_kv(std::string_view field, const char* key) {
  const std::string_view k(key);
  if (field.size() <= k.size() + 1 || field.substr(0, k.size()) != k ||
      field[k.size()] != '=') {
    throw FormatError("weights file: expected '" + std::string(key) +
                      "=' field, got '" + std::string(field) + "'");
  }
  return parse_double(field.substr(k.size() + 1));
}

}  // namespace

std::string serialize_weights(const MlpParams& p, const WeightsMeta& meta) {
  if (p.v.size() != static_cast<std::size_t>(kNetParamCount)) {
    throw DomainError("serialize_weights: wrong parameter count");
  }
  std::string out;
  out += kWeightsHeader;
  out += '\n';
  out += "arch 4 64 32 1\n";
  out += "init " + meta.init_scheme + "\n";
  out += "train epochs=" + std::to_string(meta.config.epochs) +
         " lr=" + fmt_double(meta.config.lr) +
         " batch=" + std::to_string(meta.config.batch_size) +
         " beta1=" + fmt_double(meta.config.beta1) +
         " beta2=" + fmt_double(meta.config.beta2) +
         " eps=" + fmt_double(meta.config.eps) +
         " seed=" + std::to_string(meta.config.seed) + "\n";
  out += "loss train_rad2=" + fmt_double(meta.final_train_loss) +
         " val_rad2=" + fmt_double(meta.final_val_loss) + "\n";
  out += "w1\n";
  for (int i = 0; i < kNetHidden1; ++i) {
    append_row(out, p.v.data() + kOffW1 + i * kNetInput, kNetInput);
  }
  out += "b1\n";
  append_row(out, p.v.data() + kOffB1, kNetHidden1);
  out += "w2\n";
  for (int i = 0; i < kNetHidden2; ++i) {
    append_row(out, p.v.data() + kOffW2 + i * kNetHidden1, kNetHidden1);
  }
  out += "b2\n";
  append_row(out, p.v.data() + kOffB2, kNetHidden2);
  out += "w3\n";
  append_row(out, p.v.data() + kOffW3, kNetHidden2);
  out += "b3\n";
  append_row(out, p.v.data() + kOffB3, 1);
  out += "end\n";
  return out;
}

LoadedWeights deserialize_weights(const std::string& text) {
  LineReader r(text);
  if (r.take("header") != kWeightsHeader) {
    throw FormatError("weights file: bad header");
  }
  if (r.take("arch") != "arch 4 64 32 1") {
    throw FormatError("weights file: unsupported architecture line");
  }

  LoadedWeights lw;
  lw.params = MlpParams::zeros();

  {
    auto fields = split_fields(r.take("init"));
    if (fields.size() != 2 || fields[0] != "init") {
      throw FormatError("weights file: bad init line");
    }
    lw.meta.init_scheme = std::string(fields[1]);
  }
  {
    auto fields = split_fields(r.take("train"));
    if (fields.size() != 8 || fields[0] != "train") {
      throw FormatError("weights file: bad train line");
    }
    lw.meta.config.epochs = static_cast<int>(take_kv(fields[1], "epochs"));
    lw.meta.config.lr = take_kv(fields[2], "lr");
    lw.meta.config.batch_size = static_cast<int>(take_kv(fields[3], "batch"));
    lw.meta.config.beta1 = take_kv(fields[4], "beta1");
    lw.meta.config.beta2 = take_kv(fields[5], "beta2");
    lw.meta.config.eps = take_kv(fields[6], "eps");
    if (fields[7].size() <= 5 || fields[7].substr(0, 5) != "seed=") {
      throw FormatError("weights file: bad seed field");
    }
    lw.meta.config.seed = parse_uint64(fields[7].substr(5));
  }
  {
    auto fields = split_fields(r.take("loss"));
    if (fields.size() != 3 || fields[0] != "loss") {
      throw FormatError("weights file: bad loss line");
    }
    lw.meta.final_train_loss = take_kv(fields[1], "train_rad2");
    lw.meta.final_val_loss = take_kv(fields[2], "val_rad2");
  }

  if (r.take("w1 marker") != "w1") throw FormatError("weights file: missing w1");
  for (int i = 0; i < kNetHidden1; ++i) {
    read_row(r, "w1", lw.params.v.data() + kOffW1 + i * kNetInput, kNetInput);
  }
  if (r.take("b1 marker") != "b1") throw FormatError("weights file: missing b1");
  read_row(r, "b1", lw.params.v.data() + kOffB1, kNetHidden1);
  if (r.take("w2 marker") != "w2") throw FormatError("weights file: missing w2");
  for (int i = 0; i < kNetHidden2; ++i) {
    read_row(r, "w2", lw.params.v.data() + kOffW2 + i * kNetHidden1,
             kNetHidden1);
  }
  if (r.take("b2 marker") != "b2") throw FormatError("weights file: missing b2");
  read_row(r, "b2", lw.params.v.data() + kOffB2, kNetHidden2);
  if (r.take("w3 marker") != "w3") throw FormatError("weights file: missing w3");
  read_row(r, "w3", lw.params.v.data() + kOffW3, kNetHidden2);
  if (r.take("b3 marker") != "b3") throw FormatError("weights file: missing b3");
  read_row(r, "b3", lw.params.v.data() + kOffB3, 1);
  if (r.take("end marker") != "end") {
    throw FormatError("weights file: missing end marker");
  }
  return lw;
}

void save_weights(const std::string& path, const MlpParams& p,
                  const WeightsMeta& meta) {
  write_text_file(path, serialize_weights(p, meta));
}

LoadedWeights load_weights(const std::string& path) {
  try {
    return deserialize_weights(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace hsim
