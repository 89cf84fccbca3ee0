// macc - lossless codec for microarray-style grayscale images.
//
// Subcommands: compress, decompress, gen, stats, simulate, bench, cutrace.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macc/compactor.hpp"
#include "macc/container.hpp"
#include "macc/errors.hpp"
#include "macc/pgm.hpp"
#include "macc/pipeline.hpp"
#include "macc/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 ok, 1 I/O or usage, 2 not a MACC file, 3 unsupported
// version, 4 malformed or corrupt data, 5 bad configuration.
constexpr int kExitIo = 1;
constexpr int kExitBadMagic = 2;
constexpr int kExitBadVersion = 3;
constexpr int kExitCorrupt = 4;
constexpr int kExitConfig = 5;

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw macc::Error("cannot open file: " + path);
    return std::vector<uint8_t>((std::istreambuf_iterator<char>(f)),
                                std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const uint8_t> bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw macc::Error("cannot open file for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) throw macc::Error("write failed: " + path);
}

std::string fmt_ratio(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", r);
    return buf;
}

macc::SpotLayoutParams parse_gen_params(const std::string& size, const std::string& grid,
                                        const std::string& spot, uint32_t pitch,
                                        const std::string& margin, double occupancy,
                                        const std::string& intensity, uint64_t seed) {
    macc::SpotLayoutParams p;
    auto parse_pair = [](const std::string& s, char sep, const char* what) {
        size_t at = s.find(sep);
        if (at == std::string::npos)
            throw macc::ConfigError(std::string("expected '") + sep + "'-separated pair for " + what);
        return std::pair<uint64_t, uint64_t>{std::stoull(s.substr(0, at)),
                                             std::stoull(s.substr(at + 1))};
    };

    auto [w, h] = parse_pair(size, 'x', "--size (WxH)");
    p.width = uint32_t(w);
    p.height = uint32_t(h);
    auto [gr, gc] = parse_pair(grid, 'x', "--grid (RxC)");
    p.grid_rows = uint32_t(gr);
    p.grid_cols = uint32_t(gc);

    if (spot.rfind("disk:", 0) == 0) {
        p.spot_shape = macc::SpotShape::Disk;
        p.spot_w = p.spot_h = uint32_t(std::stoul(spot.substr(5)));
    } else if (spot.rfind("rect:", 0) == 0) {
        p.spot_shape = macc::SpotShape::Rect;
        auto [sw, sh] = parse_pair(spot.substr(5), 'x', "--spot rect:WxH");
        p.spot_w = uint32_t(sw);
        p.spot_h = uint32_t(sh);
    } else {
        throw macc::ConfigError("--spot must be disk:D or rect:WxH");
    }

    p.pitch = pitch;
    auto [mx, my] = parse_pair(margin, 'x', "--margin (XxY)");
    p.margin_x = uint32_t(mx);
    p.margin_y = uint32_t(my);
    p.occupancy = occupancy;

    if (intensity.rfind("uniform:", 0) == 0) {
        p.intensity_law = macc::IntensityLaw::Uniform;
        auto [lo, hi] = parse_pair(intensity.substr(8), ':', "--intensity uniform:LO:HI");
        p.intensity_a = double(lo);
        p.intensity_b = double(hi);
    } else if (intensity.rfind("gaussian:", 0) == 0) {
        p.intensity_law = macc::IntensityLaw::Gaussian;
        size_t at = intensity.find(':', 9);
        if (at == std::string::npos)
            throw macc::ConfigError("--intensity gaussian:MEAN:SD");
        p.intensity_a = std::stod(intensity.substr(9, at - 9));
        p.intensity_b = std::stod(intensity.substr(at + 1));
    } else {
        throw macc::ConfigError("--intensity must be uniform:LO:HI or gaussian:MEAN:SD");
    }

    p.seed = seed;
    return p;
}

void print_stats(const macc::StatsReport& rep) {
    std::cout << "raw_bits=" << rep.raw_bits << "\n"
              << "container_bits=" << rep.container_bits << "\n"
              << "container_ratio=" << fmt_ratio(rep.container_ratio) << "\n"
              << "fg_count=" << rep.fg_count << "\n"
              << "fg_raw_bits=" << rep.fg_raw_bits << "\n"
              << "fg_coded_bits=" << rep.fg_coded_bits << "\n"
              << "fg_ratio=" << fmt_ratio(rep.fg_ratio) << "\n"
              << "paper_model_foreground_bits=" << rep.paper_model.foreground_bits << "\n"
              << "paper_model_index_bits=" << rep.paper_model.index_bits << "\n"
              << "paper_model_zero_row_bits=" << rep.paper_model.zero_row_bits << "\n"
              << "paper_model_total_bits=" << rep.paper_model.total_bits << "\n"
              << "paper_model_ratio=" << fmt_ratio(rep.paper_model.ratio) << "\n"
              << "section_header_bytes=" << rep.sections.header_bytes << "\n"
              << "section_table_bytes=" << rep.sections.table_bytes << "\n"
              << "section_background_bytes=" << rep.sections.background_bytes << "\n"
              << "section_foreground_bytes=" << rep.sections.foreground_bytes << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"lossless microarray image codec with an array-compactor core"};
    app.require_subcommand(1);

    macc::Exec exec = macc::Exec::Parallel;
    app.add_flag_callback("--serial", [&] { exec = macc::Exec::Serial; },
                          "run the serial reference kernels instead of the OpenMP ones");

    // compress
    std::string in_path, out_path;
    bool verify = false;
    auto* c = app.add_subcommand("compress", "compress a binary PGM into a .macc container");
    c->add_option("input", in_path, "input .pgm")->required();
    c->add_option("output", out_path, "output .macc")->required();
    c->add_flag("--verify", verify, "decompress and byte-compare before reporting success");

    // decompress
    auto* d = app.add_subcommand("decompress", "decompress a .macc container into a binary PGM");
    d->add_option("input", in_path, "input .macc")->required();
    d->add_option("output", out_path, "output .pgm")->required();

    // gen
    std::string preset, size = "256x256", grid = "10x10", spot = "disk:12", margin = "8x8",
                intensity = "gaussian:180:12";
    uint32_t pitch = 24;
    double occupancy = 0.9;
    uint64_t seed = 1;
    auto* g = app.add_subcommand("gen", "generate a synthetic microarray-style PGM");
    g->add_option("output", out_path, "output .pgm")->required();
    g->add_option("--preset", preset, "named layout (fig8: 18x18, four 24-pixel spots)");
    g->add_option("--size", size, "image size WxH")->capture_default_str();
    g->add_option("--grid", grid, "spot grid RxC")->capture_default_str();
    g->add_option("--spot", spot, "spot shape: disk:D or rect:WxH")->capture_default_str();
    g->add_option("--pitch", pitch, "pixels between spot anchors")->capture_default_str();
    g->add_option("--margin", margin, "top-left margin XxY")->capture_default_str();
    g->add_option("--occupancy", occupancy, "per-cell spot probability")->capture_default_str();
    g->add_option("--intensity", intensity, "uniform:LO:HI or gaussian:MEAN:SD")
        ->capture_default_str();
    g->add_option("--seed", seed, "RNG seed")->capture_default_str();

    // stats
    auto* s = app.add_subcommand("stats", "report compression statistics for a PGM");
    s->add_option("input", in_path, "input .pgm")->required();

    // simulate
    std::string trace_path;
    bool structural = false;
    auto* m = app.add_subcommand("simulate", "cycle-level simulation of the 3-stage row pipeline");
    m->add_option("input", in_path, "input .pgm")->required();
    m->add_option("--trace", trace_path, "write per-cycle CSV trace to this path");
    m->add_flag("--structural", structural, "drive the routing-unit grid instead of the behavioral model");

    // bench
    std::string report_path;
    auto* b = app.add_subcommand("bench", "compress every .pgm in a directory and report ratios");
    b->add_option("dir", in_path, "directory of .pgm files")->required();
    b->add_option("--out", report_path, "write the CSV report to this path (default stdout)");

    // cutrace
    std::string mask, xvals;
    auto* t = app.add_subcommand("cutrace",
                                 "dump per-stage down-bus values of one compression-unit run");
    t->add_option("mask", mask, "keep-mask bit string, e.g. 00100101")->required();
    t->add_option("--x", xvals, "comma-separated input values (default 0..N-1)");

    // lets --serial appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (c->parsed()) {
        macc::Image img = macc::load_pgm(read_file(in_path));
        macc::StatsReport rep = macc::stats(img, exec);
        macc::CompressedStream cs = macc::compress(img, exec);
        std::vector<uint8_t> bytes = cs.to_bytes();
        if (verify) {
            macc::Image back = macc::decompress(macc::CompressedStream::from_bytes(bytes), exec);
            if (!(back == img)) throw macc::CorruptError("verification failed: round trip mismatch");
        }
        write_file(out_path, bytes);
        std::cout << in_path << " -> " << out_path << " raw_bytes=" << img.pixel_count()
                  << " compressed_bytes=" << bytes.size()
                  << " ratio=" << fmt_ratio(rep.container_ratio)
                  << " fg_ratio=" << fmt_ratio(rep.fg_ratio)
                  << " paper_model_ratio=" << fmt_ratio(rep.paper_model.ratio)
                  << (verify ? " verified=yes" : "") << "\n";
        return 0;
    }

    if (d->parsed()) {
        macc::CompressedStream cs = macc::CompressedStream::from_bytes(read_file(in_path));
        macc::Image img = macc::decompress(cs, exec);
        write_file(out_path, macc::store_pgm(img));
        std::cout << in_path << " -> " << out_path << " " << img.width << "x" << img.height
                  << "\n";
        return 0;
    }

    if (g->parsed()) {
        macc::SpotLayoutParams p;
        if (!preset.empty()) {
            if (preset != "fig8") throw macc::ConfigError("unknown preset: " + preset);
            p = macc::fig8_params();
        } else {
            p = parse_gen_params(size, grid, spot, pitch, margin, occupancy, intensity, seed);
        }
        macc::Image img = macc::gen_synthetic(p);
        write_file(out_path, macc::store_pgm(img));
        std::cout << out_path << " " << img.width << "x" << img.height << " seed=" << p.seed
                  << "\n";
        return 0;
    }

    if (s->parsed()) {
        print_stats(macc::stats(macc::load_pgm(read_file(in_path)), exec));
        return 0;
    }

    if (m->parsed()) {
        macc::Image img = macc::load_pgm(read_file(in_path));
        macc::SimTrace trace = macc::simulate(img, macc::SimConfig{structural});
        if (!trace_path.empty()) {
            std::ofstream f(trace_path, std::ios::trunc);
            if (!f) throw macc::Error("cannot open file for writing: " + trace_path);
            macc::write_trace_csv(trace, f);
        }
        std::cout << "cycles=" << trace.total_cycles()
                  << " background_bytes=" << trace.background_payload.size()
                  << " foreground_bytes=" << trace.foreground_payload.size() << "\n";
        return 0;
    }

    if (b->parsed()) {
        if (!fs::is_directory(in_path)) throw macc::Error("not a directory: " + in_path);
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(in_path))
            if (entry.is_regular_file() && entry.path().extension() == ".pgm")
                files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());

        std::ostringstream csv;
        csv << "name,raw_bytes,compressed_bytes,container_ratio,fg_ratio,paper_model_ratio,error\n";
        double sum_cr = 0, sum_fg = 0, sum_pm = 0;
        uint64_t sum_raw = 0, sum_comp = 0, ok = 0;
        for (const std::string& f : files) {
            std::string name = fs::path(f).filename().string();
            try {
                macc::Image img = macc::load_pgm(read_file(f));
                macc::StatsReport rep = macc::stats(img, exec);
                csv << name << ',' << rep.raw_bits / 8 << ',' << rep.container_bits / 8 << ','
                    << fmt_ratio(rep.container_ratio) << ',' << fmt_ratio(rep.fg_ratio) << ','
                    << fmt_ratio(rep.paper_model.ratio) << ",\n";
                sum_cr += rep.container_ratio;
                sum_fg += rep.fg_ratio;
                sum_pm += rep.paper_model.ratio;
                sum_raw += rep.raw_bits / 8;
                sum_comp += rep.container_bits / 8;
                ++ok;
            } catch (const std::exception& e) {
                csv << name << ",,,,,," << e.what() << "\n";
            }
        }
        if (ok > 0) {
            csv << "mean," << sum_raw / ok << ',' << sum_comp / ok << ','
                << fmt_ratio(sum_cr / double(ok)) << ',' << fmt_ratio(sum_fg / double(ok)) << ','
                << fmt_ratio(sum_pm / double(ok)) << ",\n";
        }
        if (report_path.empty()) {
            std::cout << csv.str();
        } else {
            std::string text = csv.str();
            write_file(report_path,
                       std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
        }
        return 0;
    }

    if (t->parsed()) {
        macc::BitVector y = macc::BitVector::from_string(mask);
        macc::MaskedVector<uint32_t> mv;
        mv.y = y;
        if (xvals.empty()) {
            mv.x.resize(y.width());
            std::iota(mv.x.begin(), mv.x.end(), 0);
        } else {
            std::stringstream ss(xvals);
            std::string tok;
            while (std::getline(ss, tok, ',')) mv.x.push_back(uint32_t(std::stoul(tok)));
        }
        cu_structural(mv, macc::derive_controls(y), &std::cout);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const macc::BadMagic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadMagic;
    } catch (const macc::BadVersion& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadVersion;
    } catch (const macc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const macc::CorruptError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const macc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
