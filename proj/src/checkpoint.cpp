#include "ramix/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <system_error>
#include <vector>

#include "ramix/errors.hpp"
#include "ramix/json_conv.hpp"

namespace ramix {

namespace {

constexpr char kMagic[4] = {'R', 'M', 'X', 'C'};

void append_u32le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void append_u64le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void append_f64le(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  append_u64le(out, bits);
}

struct Reader {
  const std::string& buf;
  std::size_t pos = 0;
  const std::string origin;

  void need(std::size_t n, const char* what) const {
    if (pos + n > buf.size()) {
      throw data_error(origin + ": truncated file while reading " +
                       std::string(what));
    }
  }
  std::uint32_t u32le(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i]))
           << (8 * i);
    }
    pos += 4;
    return v;
  }
  std::uint64_t u64le(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i]))
           << (8 * i);
    }
    pos += 8;
    return v;
  }
  double f64le(const char* what) {
    const std::uint64_t bits = u64le(what);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
};

nlohmann::json meta_to_json(const CheckpointMeta& meta) {
  return nlohmann::json{{"seed", meta.seed},
                        {"epochs_run", meta.epochs_run},
                        {"final_train_loss", meta.final_train_loss},
                        {"final_val_loss", meta.final_val_loss}};
}

CheckpointMeta meta_from_json(const nlohmann::json& j) {
  CheckpointMeta meta;
  meta.seed = j.at("seed").get<std::uint64_t>();
  meta.epochs_run = j.at("epochs_run").get<std::uint64_t>();
  meta.final_train_loss = j.at("final_train_loss").get<double>();
  meta.final_val_loss = j.at("final_val_loss").get<double>();
  return meta;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw data_error("checkpoint: cannot open " + path.string());
  }
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

void save_checkpoint(RaMixNet& model, const CheckpointMeta& meta,
                     const std::filesystem::path& path) {
  const nlohmann::json header{{"config", model_config_to_json(model.config())},
                              {"meta", meta_to_json(meta)}};
  const std::string header_str = header.dump();

  std::string out;
  out.append(kMagic, sizeof(kMagic));
  out.push_back(static_cast<char>(kCheckpointVersion));
  append_u32le(out, static_cast<std::uint32_t>(header_str.size()));
  out += header_str;

  std::string blob;
  for (const auto& blk : model.params()) {
    for (std::size_t i = 0; i < blk.count; ++i) append_f64le(blob, blk.values[i]);
  }
  out += blob;
  append_u64le(out, fnv1a64(blob.data(), blob.size()));

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw data_error("checkpoint: cannot open " + tmp.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw data_error("checkpoint: short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw data_error("checkpoint: rename failed: " + ec.message());
  }
}

namespace {

struct ParsedHeader {
  ModelConfig config;
  CheckpointMeta meta;
  Reader reader;
};

ParsedHeader parse_header(const std::string& buf, const std::string& origin) {
  Reader r{buf, 0, origin};
  r.need(5, "magic");
  if (std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0) {
    throw data_error(origin + ": not a checkpoint file (bad magic)");
  }
  const auto version = static_cast<std::uint8_t>(buf[4]);
  if (version != kCheckpointVersion) {
    throw data_error(origin + ": unsupported checkpoint version " +
                     std::to_string(version));
  }
  r.pos = 5;
  const std::uint32_t jlen = r.u32le("header length");
  r.need(jlen, "header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(buf.substr(r.pos, jlen));
  } catch (const nlohmann::json::exception& e) {
    throw data_error(origin + ": bad checkpoint header: " + e.what());
  }
  r.pos += jlen;
  return ParsedHeader{model_config_from_json(header.at("config")),
                      meta_from_json(header.at("meta")), r};
}

}  // namespace

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path,
                                 std::optional<ModelVariant> expect_variant) {
  const std::string buf = read_file(path);
  const std::string origin = path.filename().string();
  ParsedHeader parsed = parse_header(buf, origin);

  if (expect_variant && parsed.config.variant != *expect_variant) {
    throw data_error(origin + ": checkpoint holds " +
                     model_variant_name(parsed.config.variant) +
                     " but " + model_variant_name(*expect_variant) +
                     " was requested");
  }

  RaMixNet model(parsed.config, /*init_seed=*/0);
  const std::size_t n_params = model.param_count();
  Reader& r = parsed.reader;
  const std::size_t blob_begin = r.pos;
  r.need(n_params * 8 + 8, "parameters");
  if (buf.size() != blob_begin + n_params * 8 + 8) {
    throw data_error(origin + ": parameter count does not match configuration");
  }

  for (auto& blk : model.params()) {
    for (std::size_t i = 0; i < blk.count; ++i) {
      blk.values[i] = r.f64le("parameter");
    }
  }
  const std::uint64_t stored = r.u64le("checksum");
  const std::uint64_t actual =
      fnv1a64(buf.data() + blob_begin, n_params * 8);
  if (stored != actual) {
    throw data_error(origin + ": parameter blob checksum mismatch");
  }
  return LoadedCheckpoint{std::move(model), parsed.meta};
}

CheckpointInfo inspect_checkpoint(const std::filesystem::path& path) {
  const std::string buf = read_file(path);
  ParsedHeader parsed = parse_header(buf, path.filename().string());
  CheckpointInfo info;
  info.config = parsed.config;
  info.meta = parsed.meta;
  info.param_count = expected_param_count(parsed.config);
  const std::size_t blob_begin = parsed.reader.pos;
  parsed.reader.need(info.param_count * 8 + 8, "parameters");
  info.checksum = fnv1a64(buf.data() + blob_begin, info.param_count * 8);
  return info;
}

}  // namespace ramix
