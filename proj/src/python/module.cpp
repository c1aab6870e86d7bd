#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pixeldepth/analysis.hpp"
#include "pixeldepth/codec.hpp"
#include "pixeldepth/experiments.hpp"
#include "pixeldepth/imagegen.hpp"
#include "pixeldepth/ingest.hpp"
#include "pixeldepth/pnm.hpp"
#include "pixeldepth/rle.hpp"
#include "pixeldepth/rng.hpp"

namespace py = pybind11;
using namespace pixeldepth;

namespace {

SeriesSpec make_spec(const std::string& kind, int width, int height, uint64_t seed, int count,
                     const std::map<std::string, double>& params) {
    SeriesSpec spec;
    spec.kind = series_kind_from_string(kind);
    spec.width = width;
    spec.height = height;
    spec.seed = seed;
    spec.count = count;
    spec.params = params;
    return spec;
}

py::dict stats_to_dict(const TimingStats& st) {
    py::dict d;
    d["image_id"] = st.image_id;
    d["mean"] = st.mean;
    d["std"] = st.std_dev;
    d["n_runs"] = st.n_runs;
    if (!st.samples.empty()) d["samples"] = st.samples;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "image complexity via compressed length and decompression time";

    py::register_exception<dimension_error>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<parameter_error>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<unsupported_depth_error>(m, "UnsupportedDepthError", PyExc_ValueError);
    py::register_exception<decode_error>(m, "DecodeError", PyExc_RuntimeError);
    py::register_exception<consistency_error>(m, "ConsistencyError", PyExc_RuntimeError);
    py::register_exception<format_error>(m, "FormatError", PyExc_RuntimeError);

    py::class_<Image>(m, "Image")
        .def(py::init<int, int, int, uint8_t>(), py::arg("width"), py::arg("height"),
             py::arg("depth") = 1, py::arg("fill") = 0)
        .def_readonly("width", &Image::width)
        .def_readonly("height", &Image::height)
        .def_readonly("depth", &Image::depth)
        .def_property_readonly(
            "pixels", [](const Image& img) { return py::bytes(reinterpret_cast<const char*>(
                                                img.pixels.data()), img.pixels.size()); })
        .def("ink", &Image::ink)
        .def("at", [](const Image& img, int x, int y) {
            if (x < 0 || y < 0 || x >= img.width || y >= img.height)
                throw py::index_error("pixel out of range");
            return img.at(x, y);
        })
        .def("__eq__", [](const Image& a, const Image& b) { return a == b; })
        .def("__repr__", [](const Image& img) {
            return "<Image " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                   " depth " + std::to_string(img.depth) + ">";
        });

    py::class_<CompressedBlob>(m, "CompressedBlob")
        .def_property_readonly("codec", [](const CompressedBlob& b) {
            return std::string(to_string(b.codec_id)); })
        .def_property_readonly("payload", [](const CompressedBlob& b) {
            return py::bytes(reinterpret_cast<const char*>(b.payload.data()), b.payload.size()); })
        .def_readonly("width", &CompressedBlob::original_width)
        .def_readonly("height", &CompressedBlob::original_height)
        .def_readonly("depth", &CompressedBlob::original_depth)
        .def_readonly("complemented", &CompressedBlob::complemented)
        .def("bit_length", &CompressedBlob::bit_length)
        .def("to_bytes", [](const CompressedBlob& b) {
            const auto bytes = serialize_blob(b);
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        })
        .def_static("from_bytes", [](const py::bytes& data) {
            const std::string s = data;
            return parse_blob(std::vector<uint8_t>(s.begin(), s.end()));
        });

    // generators
    m.def("gen_uniform", &gen_uniform, py::arg("width"), py::arg("height"), py::arg("value") = 0);
    m.def("gen_random", &gen_random, py::arg("width"), py::arg("height"), py::arg("seed"),
          py::arg("threshold"));
    m.def("gen_rule30", &gen_rule30, py::arg("width"), py::arg("steps"));
    m.def("superpose_rotated", &superpose_rotated);
    m.def("add_noise", &add_noise, py::arg("image"), py::arg("fraction"), py::arg("seed"));
    m.def("invert", &invert);
    m.def("tile", &tile, py::arg("image"), py::arg("factor"));
    m.def("generate_series", [](const std::string& kind, int width, int height, uint64_t seed,
                                int count, const std::map<std::string, double>& params) {
              return generate_series(make_spec(kind, width, height, seed, count, params));
          },
          py::arg("kind"), py::arg("width") = 600, py::arg("height") = 600, py::arg("seed") = 0,
          py::arg("count") = 1, py::arg("params") = std::map<std::string, double>{});
    m.def("series_image_ids", [](const std::string& kind, int width, int height, uint64_t seed,
                                 int count, const std::map<std::string, double>& params) {
              return series_image_ids(make_spec(kind, width, height, seed, count, params));
          },
          py::arg("kind"), py::arg("width") = 600, py::arg("height") = 600, py::arg("seed") = 0,
          py::arg("count") = 1, py::arg("params") = std::map<std::string, double>{});

    // codecs
    m.def("compress", [](const Image& img, const std::string& codec, bool optimize) {
              return compress_with(img, codec_id_from_string(codec), optimize);
          },
          py::arg("image"), py::arg("codec") = "filtered_deflate", py::arg("optimize") = true);
    m.def("decompress", [](const CompressedBlob& blob) { return decompress_image(blob); });
    m.def("k_estimate", [](const Image& img, const std::string& codec, bool optimize) {
              return k_estimate(img, codec_id_from_string(codec), optimize);
          },
          py::arg("image"), py::arg("codec") = "filtered_deflate", py::arg("optimize") = true);

    // timing
    m.def("run_session",
          [](const std::vector<Image>& images, const std::vector<std::string>& ids, int n_runs,
             int warmup_runs, uint64_t shuffle_seed, bool clear_cache, double trim,
             const std::string& codec, bool optimize) {
              Protocol p;
              p.n_runs = n_runs;
              p.warmup_runs = warmup_runs;
              p.shuffle_seed = shuffle_seed;
              p.clear_cache = clear_cache;
              p.trim = trim;
              std::vector<CompressedBlob> blobs;
              blobs.reserve(images.size());
              for (const auto& img : images)
                  blobs.push_back(compress_with(img, codec_id_from_string(codec), optimize));
              const auto stats = run_session(blobs, ids, p);
              py::list out;
              for (const auto& st : stats) out.append(stats_to_dict(st));
              return out;
          },
          py::arg("images"), py::arg("ids"), py::arg("n_runs") = 30, py::arg("warmup_runs") = 3,
          py::arg("shuffle_seed") = 0x5eed, py::arg("clear_cache") = true, py::arg("trim") = 0.1,
          py::arg("codec") = "filtered_deflate", py::arg("optimize") = false,
          "Compress the images and time their decompression under the measurement protocol.");

    // analysis
    m.def("rank_values", [](const std::vector<std::pair<std::string, double>>& values) {
        const auto set = rank(values, Measure::K);
        py::list out;
        for (const auto& e : set.entries) {
            py::dict d;
            d["image_id"] = e.image_id;
            d["value"] = e.value;
            d["rank"] = e.rank;
            d["tied"] = e.tied;
            out.append(d);
        }
        return out;
    });
    m.def("partition_significant",
          [](const std::vector<std::tuple<std::string, double, double, int>>& stats) {
              std::vector<TimingStats> ts;
              for (const auto& [id, mean, sd, n] : stats) {
                  TimingStats st;
                  st.image_id = id;
                  st.mean = mean;
                  st.std_dev = sd;
                  st.n_runs = n;
                  ts.push_back(st);
              }
              const auto part = partition_significant(ts);
              py::list out;
              for (const auto& g : part.groups) {
                  py::dict d;
                  d["label"] = g.label;
                  d["members"] = g.members;
                  d["mean"] = g.mean;
                  d["std"] = g.std_dev;
                  out.append(d);
              }
              return out;
          },
          py::arg("stats"), "stats: list of (image_id, mean, std, n_runs) tuples");
    m.def("spearman", [](const std::vector<std::pair<std::string, double>>& a,
                         const std::vector<std::pair<std::string, double>>& b) {
        return rank_correlation(rank(a, Measure::K), rank(b, Measure::D));
    });
    m.def("harmonic_order", [](const std::vector<std::vector<double>>& cells) {
        DepthMatrix matrix;
        matrix.cells = cells;
        const auto agg = aggregate_depth(matrix);
        py::dict out;
        out["partial_order"] = agg.partial_order;
        out["total_order"] = agg.total_order;
        out["harmonic_means"] = agg.harmonic_means;
        return out;
    });

    // io
    m.def("read_pnm", [](const std::string& path) { return read_pnm(path); });
    m.def("write_pnm", [](const Image& img, const std::string& path, bool raw) {
              write_pnm(img, path, raw);
          },
          py::arg("image"), py::arg("path"), py::arg("raw") = true);
    m.def("ingest", [](const std::string& path, int target_size) {
              IngestOptions opts;
              opts.target_size = target_size;
              auto result = ingest_file(path, opts);
              py::dict d;
              d["image"] = result.image;
              d["source"] = result.source;
              d["transform"] = result.transform;
              return d;
          },
          py::arg("path"), py::arg("target_size") = 600);

    m.def("reproduce", [](const std::string& test_id) {
        const auto v = run_experiment(test_id);
        py::dict d;
        d["test_id"] = v.test_id;
        d["pass"] = v.pass;
        d["summary"] = v.summary;
        d["detail"] = v.detail;
        return d;
    });

    m.attr("codec_version") = kCodecVersion;
    m.attr("rng_version") = Rng::algorithm_id;
    m.attr("__version__") = "1.0.0";
}
