#include "foresight/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "strings.hpp"

namespace foresight::report {

std::string format_double(double v) { return detail::format_double(v); }

std::string trajectory_csv(const quant::Trajectory& tr) {
  std::string out = "t,E,S,T\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    out += format_double(tr.times[i]) + "," + format_double(tr.E[i]) + "," + format_double(tr.S[i]) + "," +
           format_double(tr.T[i]) + "\n";
  }
  return out;
}

namespace {

struct StatColumn {
  const char* name;
  std::vector<double> quant::IndexStats::*member;
};

constexpr std::array<StatColumn, 5> kStats{{{"mean", &quant::IndexStats::mean},
                                            {"std", &quant::IndexStats::std},
                                            {"q05", &quant::IndexStats::q05},
                                            {"q50", &quant::IndexStats::q50},
                                            {"q95", &quant::IndexStats::q95}}};

}  // namespace

std::string ensemble_csv(const quant::Ensemble& e) {
  std::string out = "t,stat,index,value\n";
  for (std::size_t i = 0; i < e.times.size(); ++i) {
    const std::string t = format_double(e.times[i]);
    for (auto idx : quant::kIndices) {
      const auto& st = e.of(idx);
      for (const auto& col : kStats) {
        out += t + "," + col.name + "," + std::string(quant::to_string(idx)) + "," + format_double((st.*col.member)[i]) +
               "\n";
      }
    }
  }
  return out;
}

nlohmann::json to_json(const quant::Trajectory& tr) {
  return {{"seed", tr.seed},
          {"drivers", scenarios::to_json(tr.drivers)},
          {"times", tr.times},
          {"E", tr.E},
          {"S", tr.S},
          {"T", tr.T}};
}

nlohmann::json to_json(const quant::Ensemble& e) {
  nlohmann::json j{{"n_runs", e.n_runs},
                   {"base_seed", e.base_seed},
                   {"drivers", scenarios::to_json(e.drivers)},
                   {"times", e.times}};
  for (auto idx : quant::kIndices) {
    nlohmann::json st = nlohmann::json::object();
    for (const auto& col : kStats) st[col.name] = e.of(idx).*col.member;
    j[std::string(quant::to_string(idx))] = std::move(st);
  }
  return j;
}

namespace {

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

constexpr double kWidth = 720;
constexpr double kPanelHeight = 200;
constexpr double kTop = 40;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kGap = 50;
constexpr std::array<const char*, 3> kColors{"#1f77b4", "#2ca02c", "#d62728"};

}  // namespace

std::string ensemble_svg(const quant::Ensemble& e, std::string_view title) {
  const double height = kTop + 3 * (kPanelHeight + kGap);
  const double plot_w = kWidth - kLeft - kRight;
  const double t_min = e.times.empty() ? 0.0 : e.times.front();
  const double t_max = e.times.empty() ? 1.0 : std::max(e.times.back(), t_min + 1e-12);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" + fixed(height, 0) +
         "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(height, 0) + "\" font-family=\"sans-serif\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fixed(kWidth / 2, 0) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
         xml_escape(title) + "</text>\n";

  for (std::size_t p = 0; p < quant::kIndices.size(); ++p) {
    const auto idx = quant::kIndices[p];
    const auto& st = e.of(idx);
    const double y0 = kTop + static_cast<double>(p) * (kPanelHeight + kGap);
    double lo = st.q05.empty() ? 0.0 : *std::min_element(st.q05.begin(), st.q05.end());
    double hi = st.q95.empty() ? 1.0 : *std::max_element(st.q95.begin(), st.q95.end());
    lo = std::min(lo, st.mean.empty() ? lo : *std::min_element(st.mean.begin(), st.mean.end()));
    hi = std::max(hi, st.mean.empty() ? hi : *std::max_element(st.mean.begin(), st.mean.end()));
    if (hi - lo < 1e-9) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto sx = [&](double t) { return kLeft + (t - t_min) / (t_max - t_min) * plot_w; };
    auto sy = [&](double v) { return y0 + kPanelHeight - (v - lo) / (hi - lo) * kPanelHeight; };

    out += "<g class=\"panel\" data-index=\"" + std::string(quant::to_string(idx)) + "\">\n";
    out += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(y0) + "\" width=\"" + fixed(plot_w) + "\" height=\"" +
           fixed(kPanelHeight) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
      const double v = lo + (hi - lo) * tick / 4.0;
      const double t = t_min + (t_max - t_min) * tick / 4.0;
      out += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(sy(v) + 4) +
             "\" text-anchor=\"end\" font-size=\"10\">" + fixed(v, 2) + "</text>\n";
      out += "<text x=\"" + fixed(sx(t)) + "\" y=\"" + fixed(y0 + kPanelHeight + 14) +
             "\" text-anchor=\"middle\" font-size=\"10\">" + fixed(t, 1) + "</text>\n";
    }
    out += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(y0 + kPanelHeight + 30) +
           "\" text-anchor=\"middle\" font-size=\"12\">time</text>\n";
    out += "<text x=\"" + fixed(kLeft) + "\" y=\"" + fixed(y0 - 6) + "\" font-size=\"13\">" +
           std::string(quant::long_name(idx)) + " over time</text>\n";

    if (!e.times.empty()) {
      std::string band;
      for (std::size_t i = 0; i < e.times.size(); ++i) band += fixed(sx(e.times[i])) + "," + fixed(sy(st.q95[i])) + " ";
      for (std::size_t i = e.times.size(); i-- > 0;) band += fixed(sx(e.times[i])) + "," + fixed(sy(st.q05[i])) + " ";
      band.pop_back();
      out += "<polygon class=\"band\" points=\"" + band + "\" fill=\"" + kColors[p] +
             "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
      std::string line;
      for (std::size_t i = 0; i < e.times.size(); ++i) line += fixed(sx(e.times[i])) + "," + fixed(sy(st.mean[i])) + " ";
      line.pop_back();
      out += "<polyline class=\"mean\" points=\"" + line + "\" fill=\"none\" stroke=\"" + kColors[p] +
             "\" stroke-width=\"1.5\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace foresight::report
