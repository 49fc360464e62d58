#include "ramix/dataset.hpp"

#include <cstring>
#include <fstream>
#include <system_error>

#include "ramix/errors.hpp"
#include "ramix/json_conv.hpp"
#include "ramix/spectrum_io.hpp"

namespace ramix {

using nlohmann::json;

namespace {

constexpr char kPackedMagic[4] = {'R', 'M', 'X', '1'};

const char* provenance_kind_name(ItemProvenance::Kind k) {
  switch (k) {
    case ItemProvenance::Kind::raw:
      return "raw";
    case ItemProvenance::Kind::clean:
      return "clean";
    case ItemProvenance::Kind::augmented:
      return "augmented";
  }
  return "unknown";
}

ItemProvenance::Kind provenance_kind_from_name(const std::string& name) {
  if (name == "raw") return ItemProvenance::Kind::raw;
  if (name == "clean") return ItemProvenance::Kind::clean;
  if (name == "augmented") return ItemProvenance::Kind::augmented;
  throw data_error("dataset: unknown provenance kind '" + name + "'");
}

json record_to_json(const DatasetItemRecord& rec) {
  json j{{"base_index", rec.base_index},
         {"label", rec.label.serialize()},
         {"kind", provenance_kind_name(rec.provenance.kind)}};
  if (rec.provenance.record) {
    j["augment"] = augment_record_to_json(*rec.provenance.record);
  }
  return j;
}

DatasetItemRecord record_from_json(const json& j) {
  DatasetItemRecord rec{0, MixtureLabel::deserialize(
                               j.at("label").get<std::vector<double>>()),
                        {}};
  rec.base_index = j.at("base_index").get<std::uint64_t>();
  rec.provenance.kind = provenance_kind_from_name(j.at("kind").get<std::string>());
  if (rec.provenance.kind == ItemProvenance::Kind::augmented) {
    rec.provenance.record = augment_record_from_json(j.at("augment"));
  }
  return rec;
}

json meta_to_json(const DatasetMeta& meta) {
  return json{{"format", "ramix-dataset"},
              {"version", 1},
              {"compounds", meta.compounds},
              {"levels_t", meta.levels_t},
              {"include_full_scale", meta.include_full_scale},
              {"seed", meta.seed},
              {"grid",
               {{"start_cm1", meta.grid.start_cm1()},
                {"end_cm1", meta.grid.end_cm1()},
                {"n_points", meta.grid.n_points()}}},
              {"augment", augment_config_to_json(meta.augment)},
              {"augment_enabled", meta.augment_enabled},
              {"augment_reps", meta.augment_reps},
              {"clean_copy", meta.clean_copy},
              {"item_count", meta.item_count}};
}

DatasetMeta meta_from_json(const json& j) {
  if (!j.contains("format") || j.at("format").get<std::string>() != "ramix-dataset") {
    throw data_error("dataset: not a dataset manifest");
  }
  DatasetMeta meta;
  meta.compounds = j.at("compounds").get<std::vector<std::string>>();
  meta.levels_t = j.at("levels_t").get<std::uint64_t>();
  meta.include_full_scale = j.at("include_full_scale").get<bool>();
  meta.seed = j.at("seed").get<std::uint64_t>();
  const auto& g = j.at("grid");
  meta.grid = WavenumberGrid(g.at("start_cm1").get<double>(),
                             g.at("end_cm1").get<double>(),
                             g.at("n_points").get<std::size_t>());
  meta.augment = augment_config_from_json(j.at("augment"));
  meta.augment_enabled = j.at("augment_enabled").get<bool>();
  meta.augment_reps = j.at("augment_reps").get<std::size_t>();
  meta.clean_copy = j.at("clean_copy").get<bool>();
  meta.item_count = j.at("item_count").get<std::uint64_t>();
  return meta;
}

DatasetMeta make_meta(const CompoundLibrary& lib, const DatasetGenConfig& cfg,
                      std::uint64_t item_count) {
  DatasetMeta meta;
  meta.compounds = lib.names();
  meta.levels_t = cfg.mixture.levels_t;
  meta.include_full_scale = cfg.mixture.include_full_scale;
  meta.seed = cfg.augment.seed;
  meta.grid = lib.grid();
  meta.augment = cfg.augment;
  meta.augment_enabled = cfg.augment_enabled;
  meta.augment_reps = cfg.augment_reps;
  meta.clean_copy = cfg.clean_copy;
  meta.item_count = item_count;
  return meta;
}

}  // namespace

DatasetItemRecord dataset_item_record(const MixtureEnumeration& en,
                                      const DatasetGenConfig& cfg,
                                      std::uint64_t base_index,
                                      std::size_t copy_index) {
  DatasetItemRecord rec{base_index, en.label_at(base_index), {}};
  if (!cfg.augment_enabled) {
    rec.provenance.kind = ItemProvenance::Kind::raw;
    return rec;
  }
  if (cfg.clean_copy && copy_index == 0) {
    rec.provenance.kind = ItemProvenance::Kind::clean;
    return rec;
  }
  rec.provenance.kind = ItemProvenance::Kind::augmented;
  const std::uint64_t stream_id =
      base_index * cfg.copies_per_mixture() + copy_index;
  Rng rng = Rng::substream(cfg.augment.seed, stream_id);
  AugmentRecord draw = draw_augment_record(cfg.augment, rng);
  draw.substream_id = stream_id;
  rec.provenance.record = draw;
  return rec;
}

std::vector<double> dataset_item_spectrum(const MixtureEnumeration& en,
                                          const DatasetGenConfig& cfg,
                                          const DatasetItemRecord& rec) {
  Spectrum base = en.spectrum_at(rec.base_index);
  switch (rec.provenance.kind) {
    case ItemProvenance::Kind::raw:
      return base.intensities();
    case ItemProvenance::Kind::clean:
      return normalize_minmax(base).intensities();
    case ItemProvenance::Kind::augmented:
      return apply_augment(base, *rec.provenance.record,
                           cfg.augment.renormalize_after_baseline)
          .intensities();
  }
  throw data_error("dataset: bad provenance kind");
}

Dataset build_dataset(const CompoundLibrary& lib, const DatasetGenConfig& cfg) {
  const MixtureEnumeration en(lib, cfg.mixture);
  const std::size_t copies = cfg.copies_per_mixture();
  const std::uint64_t total = en.count() * copies;

  Dataset ds;
  ds.meta = make_meta(lib, cfg, total);
  ds.records.reserve(total);
  ds.spectra.reserve(total);
  for (std::uint64_t v = 0; v < en.count(); ++v) {
    for (std::size_t copy = 0; copy < copies; ++copy) {
      DatasetItemRecord rec = dataset_item_record(en, cfg, v, copy);
      ds.spectra.push_back(dataset_item_spectrum(en, cfg, rec));
      ds.records.push_back(std::move(rec));
    }
  }
  return ds;
}

std::vector<TrainItem> Dataset::to_train_items() const {
  std::vector<std::size_t> all(records.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return to_train_items(all);
}

std::vector<TrainItem> Dataset::to_train_items(
    const std::vector<std::size_t>& idx) const {
  std::vector<TrainItem> items;
  items.reserve(idx.size());
  for (std::size_t i : idx) {
    items.push_back(TrainItem{records.at(i).label, spectra.at(i)});
  }
  return items;
}

std::vector<std::uint64_t> Dataset::group_ids() const {
  std::vector<std::uint64_t> ids(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) ids[i] = records[i].base_index;
  return ids;
}

void write_dataset_json(const Dataset& ds, const std::filesystem::path& path) {
  json j = meta_to_json(ds.meta);
  json items = json::array();
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    json item = record_to_json(ds.records[i]);
    item["spectrum"] = ds.spectra[i];
    items.push_back(std::move(item));
  }
  j["items"] = std::move(items);
  write_text_atomic(path, j.dump(1) + "\n");
}

namespace {

std::string packed_header(const DatasetMeta& meta,
                          const std::vector<DatasetItemRecord>& records) {
  json j = meta_to_json(meta);
  json items = json::array();
  for (const auto& rec : records) items.push_back(record_to_json(rec));
  j["items"] = std::move(items);
  return j.dump();
}

void write_packed_preamble(std::ofstream& out, const std::string& header) {
  out.write(kPackedMagic, sizeof(kPackedMagic));
  out.put(static_cast<char>(kPackedDatasetVersion));
  const auto len = static_cast<std::uint32_t>(header.size());
  char lenbuf[4];
  for (int i = 0; i < 4; ++i) lenbuf[i] = static_cast<char>((len >> (8 * i)) & 0xFF);
  out.write(lenbuf, 4);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
}

void write_f32_row(std::ofstream& out, const std::vector<double>& row,
                   std::vector<float>& scratch) {
  scratch.resize(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    scratch[i] = static_cast<float>(row[i]);
  }
  static_assert(sizeof(float) == 4);
  out.write(reinterpret_cast<const char*>(scratch.data()),
            static_cast<std::streamsize>(scratch.size() * 4));
}

void finalize_packed(std::ofstream& out, const std::filesystem::path& tmp,
                     const std::filesystem::path& path) {
  out.flush();
  if (!out) throw data_error("dataset: short write to " + tmp.string());
  out.close();
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw data_error("dataset: rename failed: " + ec.message());
}

}  // namespace

void write_dataset_packed(const Dataset& ds, const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  std::ofstream out(tmp, std::ios::binary);
  if (!out) throw data_error("dataset: cannot open " + tmp.string());
  write_packed_preamble(out, packed_header(ds.meta, ds.records));
  std::vector<float> scratch;
  for (const auto& row : ds.spectra) write_f32_row(out, row, scratch);
  finalize_packed(out, tmp, path);
}

void generate_dataset_packed(const CompoundLibrary& lib,
                             const DatasetGenConfig& cfg,
                             const std::filesystem::path& path) {
  const MixtureEnumeration en(lib, cfg.mixture);
  const std::size_t copies = cfg.copies_per_mixture();
  const std::uint64_t total = en.count() * copies;

  std::vector<DatasetItemRecord> records;
  records.reserve(total);
  for (std::uint64_t v = 0; v < en.count(); ++v) {
    for (std::size_t copy = 0; copy < copies; ++copy) {
      records.push_back(dataset_item_record(en, cfg, v, copy));
    }
  }

  const std::filesystem::path tmp = path.string() + ".tmp";
  std::ofstream out(tmp, std::ios::binary);
  if (!out) throw data_error("dataset: cannot open " + tmp.string());
  write_packed_preamble(out, packed_header(make_meta(lib, cfg, total), records));
  std::vector<float> scratch;
  for (const auto& rec : records) {
    write_f32_row(out, dataset_item_spectrum(en, cfg, rec), scratch);
  }
  finalize_packed(out, tmp, path);
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("dataset: cannot open " + path.string());
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  const std::string origin = path.filename().string();

  Dataset ds;
  if (buf.size() >= 4 && std::memcmp(buf.data(), kPackedMagic, 4) == 0) {
    if (buf.size() < 9) throw data_error(origin + ": truncated packed dataset");
    const auto version = static_cast<std::uint8_t>(buf[4]);
    if (version != kPackedDatasetVersion) {
      throw data_error(origin + ": unsupported dataset version " +
                       std::to_string(version));
    }
    std::uint32_t jlen = 0;
    for (int i = 0; i < 4; ++i) {
      jlen |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[5 + i]))
              << (8 * i);
    }
    if (buf.size() < 9 + jlen) throw data_error(origin + ": truncated header");
    json j;
    try {
      j = json::parse(buf.substr(9, jlen));
    } catch (const json::exception& e) {
      throw data_error(origin + ": bad dataset header: " + std::string(e.what()));
    }
    ds.meta = meta_from_json(j);
    for (const auto& item : j.at("items")) {
      ds.records.push_back(record_from_json(item));
    }
    const std::size_t n = ds.meta.grid.n_points();
    const std::size_t expect = 9 + jlen + ds.records.size() * n * 4;
    if (buf.size() != expect) {
      throw data_error(origin + ": spectra blob size mismatch");
    }
    std::size_t pos = 9 + jlen;
    ds.spectra.reserve(ds.records.size());
    for (std::size_t r = 0; r < ds.records.size(); ++r) {
      std::vector<double> row(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t bits = 0;
        for (int b = 0; b < 4; ++b) {
          bits |= static_cast<std::uint32_t>(
                      static_cast<unsigned char>(buf[pos + b]))
                  << (8 * b);
        }
        float f;
        std::memcpy(&f, &bits, sizeof(f));
        row[i] = static_cast<double>(f);
        pos += 4;
      }
      ds.spectra.push_back(std::move(row));
    }
  } else {
    json j;
    try {
      j = json::parse(buf);
    } catch (const json::exception& e) {
      throw data_error(origin + ": not a dataset file: " + std::string(e.what()));
    }
    ds.meta = meta_from_json(j);
    for (const auto& item : j.at("items")) {
      ds.records.push_back(record_from_json(item));
      ds.spectra.push_back(item.at("spectrum").get<std::vector<double>>());
      if (ds.spectra.back().size() != ds.meta.grid.n_points()) {
        throw data_error(origin + ": item spectrum length mismatch");
      }
    }
  }
  if (ds.records.size() != ds.meta.item_count) {
    throw data_error(origin + ": item count mismatch");
  }
  return ds;
}

}  // namespace ramix
