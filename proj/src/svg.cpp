#include "ggeval/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ggeval/error.hpp"
#include "ggeval/numfmt.hpp"

namespace ggeval {

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string palette(std::size_t i) { return kPalette[i % kPaletteSize]; }

std::string esc(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string coord(double v) { return fmt_fixed(v, 2); }

// Round to 3 significant digits before printing a tick label.
double round3(double v) {
    if (v == 0.0 || !std::isfinite(v))
        return v;
    const double k = std::pow(10.0, 2 - std::floor(std::log10(std::abs(v))));
    return std::round(v * k) / k;
}

std::string hex2(int v) {
    static const char digits[] = "0123456789abcdef";
    std::string out(2, '0');
    out[0] = digits[(v >> 4) & 15];
    out[1] = digits[v & 15];
    return out;
}

// Diverging blue-white-red map over [-1, 1].
std::string diverging(double t) {
    t = std::clamp(t, -1.0, 1.0);
    const int lo[3] = {33, 102, 172};    // -1
    const int mid[3] = {247, 247, 247};  // 0
    const int hi[3] = {178, 24, 43};     // +1
    int rgb[3];
    for (int c = 0; c < 3; ++c) {
        if (t < 0.0)
            rgb[c] = static_cast<int>(std::lround(mid[c] + (lo[c] - mid[c]) * (-t)));
        else
            rgb[c] = static_cast<int>(std::lround(mid[c] + (hi[c] - mid[c]) * t));
    }
    return "#" + hex2(rgb[0]) + hex2(rgb[1]) + hex2(rgb[2]);
}

std::string svg_open(double w, double h) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(w) +
           "\" height=\"" + coord(h) + "\" viewBox=\"0 0 " + coord(w) + " " +
           coord(h) + "\" font-family=\"sans-serif\">\n";
    return out;
}

std::string text_at(double x, double y, const std::string& body, int size,
                    const std::string& anchor = "start",
                    const std::string& extra = "") {
    std::string out = "<text x=\"" + coord(x) + "\" y=\"" + coord(y) +
                      "\" font-size=\"" + std::to_string(size) + "\"";
    if (anchor != "start")
        out += " text-anchor=\"" + anchor + "\"";
    if (!extra.empty())
        out += " " + extra;
    out += ">" + esc(body) + "</text>\n";
    return out;
}

std::string line_at(double x1, double y1, double x2, double y2,
                    const std::string& stroke, const std::string& extra = "") {
    return "<line x1=\"" + coord(x1) + "\" y1=\"" + coord(y1) + "\" x2=\"" +
           coord(x2) + "\" y2=\"" + coord(y2) + "\" stroke=\"" + stroke + "\"" +
           (extra.empty() ? "" : " " + extra) + "/>\n";
}

struct LinMap {
    double lo = 0.0, hi = 1.0;     // data range
    double plo = 0.0, phi = 1.0;   // pixel range
    double operator()(double v) const {
        if (hi == lo)
            return (plo + phi) / 2.0;
        return plo + (v - lo) / (hi - lo) * (phi - plo);
    }
};

}  // namespace

std::string render_mmd_vs_scale(const RankingReport& report, DescriptorKind kind,
                                KernelFamily family) {
    std::vector<const RankingRow*> rows;
    for (const RankingRow& r : report.rows)
        if (r.descriptor.kind == kind && r.kernel == family && r.scale)
            rows.push_back(&r);
    if (rows.empty())
        throw ConfigError("no rows for " + descriptor_name(kind) + " and " +
                          kernel_name(family));
    for (const RankingRow* r : rows)
        if (r->descriptor.n_bin != rows.front()->descriptor.n_bin)
            throw ConfigError("multiple bin counts for " + descriptor_name(kind) +
                              "; the scale plot needs a unique one");
    std::sort(rows.begin(), rows.end(), [](const RankingRow* a, const RankingRow* b) {
        return *a->scale < *b->scale;
    });

    const double width = 860, height = 520;
    const double ml = 80, mr = 190, mt = 46, mb = 96;
    const double pw = width - ml - mr, ph = height - mt - mb;

    LinMap xmap, ymap;
    xmap.lo = std::log10(*rows.front()->scale);
    xmap.hi = std::log10(*rows.back()->scale);
    xmap.plo = ml;
    xmap.phi = ml + pw;

    double ylo = rows.front()->anchor_mmd2, yhi = ylo;
    for (const RankingRow* r : rows) {
        ylo = std::min(ylo, r->anchor_mmd2);
        yhi = std::max(yhi, r->anchor_mmd2);
        for (double v : r->model_mmd2) {
            ylo = std::min(ylo, v);
            yhi = std::max(yhi, v);
        }
    }
    if (ylo == yhi) {
        ylo -= 0.5;
        yhi += 0.5;
    } else {
        const double pad = (yhi - ylo) * 0.06;
        ylo -= pad;
        yhi += pad;
    }
    ymap.lo = ylo;
    ymap.hi = yhi;
    ymap.plo = mt + ph;  // y grows downward
    ymap.phi = mt;

    std::string out = svg_open(width, height);
    out += text_at(ml, mt - 18,
                   descriptor_label(rows.front()->descriptor) + " / " +
                       kernel_name(family) + " (" + estimator_name(report.estimator) + ")",
                   14);
    out += "<rect x=\"" + coord(ml) + "\" y=\"" + coord(mt) + "\" width=\"" +
           coord(pw) + "\" height=\"" + coord(ph) +
           "\" fill=\"none\" stroke=\"#444444\"/>\n";

    // y ticks
    for (int t = 0; t <= 4; ++t) {
        const double v = ylo + (yhi - ylo) * t / 4.0;
        const double y = ymap(v);
        out += line_at(ml - 4, y, ml, y, "#444444");
        out += text_at(ml - 8, y + 3, fmt_double(round3(v)), 10, "end");
    }
    out += text_at(16, mt + ph / 2.0, "mmd2", 11, "middle",
                   "transform=\"rotate(-90 16 " + coord(mt + ph / 2.0) + ")\"");

    // x ticks at each scale
    for (const RankingRow* r : rows) {
        const double x = xmap(std::log10(*r->scale));
        out += line_at(x, mt + ph, x, mt + ph + 4, "#444444");
        out += text_at(x, mt + ph + 16, fmt_double(*r->scale), 9, "middle");
    }
    out += text_at(ml + pw / 2.0, height - 10, "kernel scale (log axis)", 11, "middle");

    // model curves
    const std::size_t n_models = report.models.size();
    for (std::size_t j = 0; j < n_models; ++j) {
        std::string points;
        for (const RankingRow* r : rows) {
            if (!points.empty())
                points += ' ';
            points += coord(xmap(std::log10(*r->scale))) + "," + coord(ymap(r->model_mmd2[j]));
        }
        out += "<polyline class=\"model\" data-model=\"" + esc(report.models[j]) +
               "\" points=\"" + points + "\" fill=\"none\" stroke=\"" + palette(j) +
               "\" stroke-width=\"1.8\"/>\n";
    }

    // train/test anchor, dashed
    {
        std::string d;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            d += i == 0 ? "M " : " L ";
            d += coord(xmap(std::log10(*rows[i]->scale))) + " " +
                 coord(ymap(rows[i]->anchor_mmd2));
        }
        out += "<path class=\"anchor\" d=\"" + d +
               "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1.4\" "
               "stroke-dasharray=\"6 4\"/>\n";
    }

    // winner strip: one segment per scale
    {
        const double bar_y = mt + ph + 26, bar_h = 14;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const double xc = xmap(std::log10(*rows[i]->scale));
            const double xl = i == 0 ? ml
                                     : (xmap(std::log10(*rows[i - 1]->scale)) + xc) / 2.0;
            const double xr = i + 1 == rows.size()
                                  ? ml + pw
                                  : (xc + xmap(std::log10(*rows[i + 1]->scale))) / 2.0;
            const auto winner = static_cast<std::size_t>(rows[i]->argmin);
            out += "<rect class=\"rank\" data-model=\"" + esc(report.models[winner]) +
                   "\" x=\"" + coord(xl) + "\" y=\"" + coord(bar_y) + "\" width=\"" +
                   coord(xr - xl) + "\" height=\"" + coord(bar_h) + "\" fill=\"" +
                   palette(winner) + "\"/>\n";
        }
        out += text_at(ml - 8, bar_y + bar_h - 3, "winner", 9, "end");
    }

    // legend
    {
        double ly = mt + 8;
        const double lx = ml + pw + 18;
        for (std::size_t j = 0; j < n_models; ++j) {
            out += "<rect class=\"legend-swatch\" x=\"" + coord(lx) + "\" y=\"" +
                   coord(ly - 9) + "\" width=\"12\" height=\"12\" fill=\"" + palette(j) +
                   "\"/>\n";
            out += text_at(lx + 18, ly + 1, report.models[j], 11);
            ly += 18;
        }
        out += line_at(lx, ly - 3, lx + 12, ly - 3, "#555555",
                       "stroke-dasharray=\"6 4\"");
        out += text_at(lx + 18, ly + 1, "train vs test", 11);
    }

    out += "</svg>\n";
    return out;
}

std::string render_best_worst(const BestWorstHeatmap& map) {
    if (map.descriptors.empty() || map.datasets.empty() || map.kinds.empty())
        throw ConfigError("empty heatmap");

    const double cell = 34;
    const double ml = 150, mt = 58, group_gap = 20, block_gap = 64;
    const std::size_t n_desc = map.descriptors.size();
    const std::size_t n_data = map.datasets.size();
    const std::size_t n_kind = map.kinds.size();

    const double grid_w =
        static_cast<double>(n_kind) * static_cast<double>(n_data) * cell +
        static_cast<double>(n_kind - 1) * group_gap;
    const double grid_h = static_cast<double>(n_desc) * cell;
    const double width = ml + grid_w + 120;
    const double height = mt + 2 * grid_h + block_gap + 70;

    auto cell_x = [&](std::size_t k, std::size_t d) {
        return ml + static_cast<double>(k) * (static_cast<double>(n_data) * cell + group_gap) +
               static_cast<double>(d) * cell;
    };

    std::string out = svg_open(width, height);

    const char* block_names[2] = {"best", "worst"};
    for (int block = 0; block < 2; ++block) {
        const double top = mt + block * (grid_h + block_gap);
        out += text_at(ml - 10, top - 26, block_names[block], 13, "end",
                       "font-weight=\"bold\"");
        for (std::size_t k = 0; k < n_kind; ++k) {
            out += text_at(cell_x(k, 0) + static_cast<double>(n_data) * cell / 2.0,
                           top - 26, perturb_name(map.kinds[k]), 11, "middle");
            for (std::size_t d = 0; d < n_data; ++d)
                out += text_at(cell_x(k, d) + cell / 2.0, top - 8,
                               map.datasets[d], 9, "middle");
        }
        for (std::size_t r = 0; r < n_desc; ++r) {
            out += text_at(ml - 10, top + static_cast<double>(r) * cell + cell / 2.0 + 3,
                           map.descriptors[r], 10, "end");
            for (std::size_t k = 0; k < n_kind; ++k)
                for (std::size_t d = 0; d < n_data; ++d) {
                    const HeatmapCell& hc = map.cells[k][r][d];
                    const double x = cell_x(k, d);
                    const double y = top + static_cast<double>(r) * cell;
                    if (hc.missing) {
                        out += "<rect class=\"cell missing\" x=\"" + coord(x) +
                               "\" y=\"" + coord(y) + "\" width=\"" + coord(cell - 2) +
                               "\" height=\"" + coord(cell - 2) +
                               "\" fill=\"#bbbbbb\"/>\n";
                        continue;
                    }
                    const double v = block == 0 ? hc.best : hc.worst;
                    out += "<rect class=\"cell\" data-value=\"" + fmt_double(v) +
                           "\" x=\"" + coord(x) + "\" y=\"" + coord(y) + "\" width=\"" +
                           coord(cell - 2) + "\" height=\"" + coord(cell - 2) +
                           "\" fill=\"" + diverging(v) + "\"/>\n";
                    out += text_at(x + (cell - 2) / 2.0, y + cell / 2.0 + 2,
                                   fmt_fixed(v, 2), 8, "middle");
                }
        }
    }

    // legend gradient
    const double lx = ml + grid_w + 30, ly = mt, lh = 2 * grid_h + block_gap;
    out += "<defs><linearGradient id=\"bw\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">";
    for (int s = 0; s <= 10; ++s) {
        const double t = -1.0 + 0.2 * s;
        out += "<stop offset=\"" + coord(s * 10.0) + "%\" stop-color=\"" +
               diverging(t) + "\"/>";
    }
    out += "</linearGradient></defs>\n";
    out += "<rect class=\"legend\" x=\"" + coord(lx) + "\" y=\"" + coord(ly) +
           "\" width=\"16\" height=\"" + coord(lh) +
           "\" fill=\"url(#bw)\" stroke=\"#444444\"/>\n";
    out += text_at(lx + 22, ly + 8, "1", 10);
    out += text_at(lx + 22, ly + lh / 2.0 + 3, "0", 10);
    out += text_at(lx + 22, ly + lh, "-1", 10);

    out += "</svg>\n";
    return out;
}

std::string render_argmin_heatmap(const RankingReport& report, DescriptorKind kind,
                                  KernelFamily family) {
    std::set<int> bin_set;
    std::set<double> scale_set;
    std::map<std::pair<int, double>, const RankingRow*> by_key;
    for (const RankingRow& r : report.rows)
        if (r.descriptor.kind == kind && r.kernel == family && r.scale) {
            bin_set.insert(r.descriptor.n_bin);
            scale_set.insert(*r.scale);
            by_key[{r.descriptor.n_bin, *r.scale}] = &r;
        }
    if (by_key.empty())
        throw ConfigError("no rows for " + descriptor_name(kind) + " and " +
                          kernel_name(family));

    const std::vector<int> bins(bin_set.begin(), bin_set.end());
    const std::vector<double> scales(scale_set.begin(), scale_set.end());

    const double cell = 30;
    const double ml = 90, mt = 52;
    const double grid_w = static_cast<double>(scales.size()) * cell;
    const double grid_h = static_cast<double>(bins.size()) * cell;
    const double width = ml + grid_w + 170;
    const double height = mt + grid_h + 60;

    std::string out = svg_open(width, height);
    out += text_at(ml, mt - 30,
                   descriptor_name(kind) + " / " + kernel_name(family) +
                       ": winner per (bins, scale)",
                   13);

    for (std::size_t c = 0; c < scales.size(); ++c)
        out += text_at(ml + (static_cast<double>(c) + 0.5) * cell, mt - 8,
                       fmt_double(scales[c]), 8, "middle");
    for (std::size_t r = 0; r < bins.size(); ++r) {
        out += text_at(ml - 8, mt + (static_cast<double>(r) + 0.5) * cell + 3,
                       std::to_string(bins[r]), 10, "end");
        for (std::size_t c = 0; c < scales.size(); ++c) {
            const auto it = by_key.find({bins[r], scales[c]});
            const double x = ml + static_cast<double>(c) * cell;
            const double y = mt + static_cast<double>(r) * cell;
            if (it == by_key.end()) {
                out += "<rect class=\"cell missing\" x=\"" + coord(x) + "\" y=\"" +
                       coord(y) + "\" width=\"" + coord(cell - 2) + "\" height=\"" +
                       coord(cell - 2) + "\" fill=\"#bbbbbb\"/>\n";
                continue;
            }
            const auto winner = static_cast<std::size_t>(it->second->argmin);
            out += "<rect class=\"cell\" data-model=\"" + esc(report.models[winner]) +
                   "\" x=\"" + coord(x) + "\" y=\"" + coord(y) + "\" width=\"" +
                   coord(cell - 2) + "\" height=\"" + coord(cell - 2) + "\" fill=\"" +
                   palette(winner) + "\"/>\n";
        }
    }
    out += text_at(ml + grid_w / 2.0, mt + grid_h + 30, "kernel scale", 11, "middle");
    out += text_at(20, mt + grid_h / 2.0, "bins", 11, "middle",
                   "transform=\"rotate(-90 20 " + coord(mt + grid_h / 2.0) + ")\"");

    double ly = mt + 4;
    const double lx = ml + grid_w + 24;
    for (std::size_t j = 0; j < report.models.size(); ++j) {
        out += "<rect class=\"legend-swatch\" x=\"" + coord(lx) + "\" y=\"" +
               coord(ly - 9) + "\" width=\"12\" height=\"12\" fill=\"" + palette(j) +
               "\"/>\n";
        out += text_at(lx + 18, ly + 1, report.models[j], 11);
        ly += 18;
    }

    out += "</svg>\n";
    return out;
}

std::string render_bench_lines(const std::vector<BenchRow>& rows) {
    if (rows.empty())
        throw ConfigError("no bench rows");
    for (const BenchRow& r : rows)
        if (r.variable != rows.front().variable)
            throw ConfigError("bench rows mix variables");

    std::vector<KernelFamily> kernels;
    for (const BenchRow& r : rows)
        if (std::find(kernels.begin(), kernels.end(), r.kernel) == kernels.end())
            kernels.push_back(r.kernel);

    double xlo = rows.front().value, xhi = xlo;
    double ylo = 0.0, yhi = 0.0;
    bool first = true;
    for (const BenchRow& r : rows) {
        xlo = std::min(xlo, static_cast<double>(r.value));
        xhi = std::max(xhi, static_cast<double>(r.value));
        if (r.mean_seconds <= 0.0)
            throw ConfigError("bench mean must be positive to plot on a log axis");
        const double lo = std::log10(std::max(r.mean_seconds - r.std_seconds,
                                              r.mean_seconds * 0.1));
        const double hi = std::log10(r.mean_seconds + r.std_seconds);
        if (first) {
            ylo = lo;
            yhi = hi;
            first = false;
        } else {
            ylo = std::min(ylo, lo);
            yhi = std::max(yhi, hi);
        }
    }
    if (ylo == yhi) {
        ylo -= 1.0;
        yhi += 1.0;
    } else {
        const double pad = (yhi - ylo) * 0.08;
        ylo -= pad;
        yhi += pad;
    }

    const double width = 820, height = 500;
    const double ml = 86, mr = 170, mt = 40, mb = 70;
    const double pw = width - ml - mr, ph = height - mt - mb;
    LinMap xmap{xlo, xhi, ml, ml + pw};
    LinMap ymap{ylo, yhi, mt + ph, mt};

    std::string out = svg_open(width, height);
    out += text_at(ml, mt - 14,
                   "kernel + MMD wall time vs " + bench_variable_name(rows.front().variable),
                   13);
    out += "<rect x=\"" + coord(ml) + "\" y=\"" + coord(mt) + "\" width=\"" +
           coord(pw) + "\" height=\"" + coord(ph) +
           "\" fill=\"none\" stroke=\"#444444\"/>\n";

    // y ticks at powers of ten
    for (int e = static_cast<int>(std::ceil(ylo)); e <= static_cast<int>(std::floor(yhi)); ++e) {
        const double y = ymap(static_cast<double>(e));
        out += line_at(ml - 4, y, ml + pw, y, "#dddddd");
        out += line_at(ml - 4, y, ml, y, "#444444");
        out += text_at(ml - 8, y + 3, fmt_double(std::pow(10.0, e)), 10, "end");
    }
    out += text_at(18, mt + ph / 2.0, "seconds (log axis)", 11, "middle",
                   "transform=\"rotate(-90 18 " + coord(mt + ph / 2.0) + ")\"");

    // x ticks at distinct values
    std::set<int> xticks;
    for (const BenchRow& r : rows)
        xticks.insert(r.value);
    for (int v : xticks) {
        const double x = xmap(static_cast<double>(v));
        out += line_at(x, mt + ph, x, mt + ph + 4, "#444444");
        out += text_at(x, mt + ph + 16, std::to_string(v), 9, "middle");
    }
    out += text_at(ml + pw / 2.0, height - 12, bench_variable_name(rows.front().variable),
                   11, "middle");

    for (std::size_t kidx = 0; kidx < kernels.size(); ++kidx) {
        std::string points;
        for (const BenchRow& r : rows) {
            if (r.kernel != kernels[kidx])
                continue;
            const double x = xmap(static_cast<double>(r.value));
            const double y = ymap(std::log10(r.mean_seconds));
            if (!points.empty())
                points += ' ';
            points += coord(x) + "," + coord(y);
            if (r.std_seconds > 0.0) {
                const double lo_v = std::max(r.mean_seconds - r.std_seconds,
                                             r.mean_seconds * 0.1);
                out += line_at(x, ymap(std::log10(lo_v)),
                               x, ymap(std::log10(r.mean_seconds + r.std_seconds)),
                               palette(kidx), "class=\"err\"");
            }
        }
        out += "<polyline class=\"bench\" data-kernel=\"" +
               esc(kernel_name(kernels[kidx])) + "\" points=\"" + points +
               "\" fill=\"none\" stroke=\"" + palette(kidx) +
               "\" stroke-width=\"1.8\"/>\n";
    }

    double ly = mt + 8;
    const double lx = ml + pw + 18;
    for (std::size_t kidx = 0; kidx < kernels.size(); ++kidx) {
        out += "<rect class=\"legend-swatch\" x=\"" + coord(lx) + "\" y=\"" +
               coord(ly - 9) + "\" width=\"12\" height=\"12\" fill=\"" + palette(kidx) +
               "\"/>\n";
        out += text_at(lx + 18, ly + 1, kernel_name(kernels[kidx]), 11);
        ly += 18;
    }

    out += "</svg>\n";
    return out;
}

}  // namespace ggeval
