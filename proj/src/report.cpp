#include "plate/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace plate {

namespace {

std::string num(double v)
{
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string fixed(double v)
{
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

} // namespace

nlohmann::json report_json(SpectralParams const &p)
{
  return {{"N", p.N}, {"tau", p.tau}, {"a", p.a}, {"b", p.b}, {"gamma", p.gamma}, {"lambda2", p.lambda2}};
}

nlohmann::json report_json(LemmaCheck const &c)
{
  static char const *const names[8] = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii"};
  nlohmann::json props = nlohmann::json::array();
  for (int k = 0; k < 8; ++k) {
    props.push_back({{"property", names[k]}, {"holds", c.holds[k]}, {"worst_margin", c.worst[k]}});
  }
  return {{"all", c.all()}, {"properties", props}};
}

nlohmann::json report_json(BoundReport const &r)
{
  return {{"domain", r.domain},
          {"tau", r.tau},
          {"scale", r.scale},
          {"lambda2_ball", r.lambda2_ball},
          {"A", r.A},
          {"alpha", r.alpha},
          {"eta", r.eta},
          {"rhs", r.rhs},
          {"lambda2_domain", r.lambda2_domain},
          {"delta_prev", r.delta_prev},
          {"trial_bound", r.trial_bound},
          {"tolerance", r.tolerance},
          {"center", {r.center.x(), r.center.y()}},
          {"holds", r.holds},
          {"trial_ordered", r.trial_ordered}};
}

nlohmann::json report_json(SharpnessReport const &r)
{
  nlohmann::json recs = nlohmann::json::array();
  for (auto const &x : r.records) {
    nlohmann::json j = {{"eps", x.eps},
                        {"area_gap", x.area_gap},
                        {"asymmetry", x.asymmetry},
                        {"tone", x.tone},
                        {"tone_gap", x.tone_gap},
                        {"tone_gap_over_eps2", x.tone_gap_over_eps2},
                        {"delta_prev", x.delta_prev},
                        {"used_in_fit", x.used_in_fit}};
    if (r.problem == Problem::Neumann) {
      j["trial_bound"] = x.trial_bound;
      j["ball_same_area"] = x.ball_same_area;
      j["chain_ordered"] = x.chain_ordered;
    }
    recs.push_back(std::move(j));
  }
  nlohmann::json j = {{"problem", to_string(r.problem)},
                      {"psi", r.psi},
                      {"tau", r.tau},
                      {"lambda2_ball", r.lambda2_ball},
                      {"eps_list", r.eps_list},
                      {"records", recs},
                      {"slope", r.slope},
                      {"r_constants", {{"r3", r.r3}, {"r4", r.r4}}}};
  if (r.problem == Problem::Neumann) {
    j["coarse_constant"] = r.coarse_constant;
  }
  return j;
}

nlohmann::json document(std::string const &command, nlohmann::json result)
{
  return {{"schema", kSchema}, {"command", command}, {"result", std::move(result)}};
}

std::string sharpness_csv(SharpnessReport const &r)
{
  std::ostringstream out;
  out << "eps,area_gap,asymmetry,tone,tone_gap,tone_gap_over_eps2\n";
  for (auto const &x : r.records) {
    out << num(x.eps) << ',' << num(x.area_gap) << ',' << num(x.asymmetry) << ',' << num(x.tone) << ','
        << num(x.tone_gap) << ',' << num(x.tone_gap_over_eps2) << '\n';
  }
  return out.str();
}

std::string sharpness_svg(SharpnessReport const &r)
{
  constexpr double W = 640, H = 480, L = 70, Rm = 20, T = 30, B = 60;
  std::vector<double> lx, ly;
  for (auto const &x : r.records) {
    if (x.tone_gap > 0.0) {
      lx.push_back(std::log10(x.eps));
      ly.push_back(std::log10(x.tone_gap));
    }
  }
  if (lx.empty()) {
    lx = {-2.0, -1.0};
    ly = {-6.0, -4.0};
  }
  double x0 = *std::min_element(lx.begin(), lx.end()), x1 = *std::max_element(lx.begin(), lx.end());
  double y0 = *std::min_element(ly.begin(), ly.end()), y1 = *std::max_element(ly.begin(), ly.end());
  double const px = std::max(0.05, 0.08 * (x1 - x0)), py = std::max(0.05, 0.08 * (y1 - y0));
  x0 -= px, x1 += px, y0 -= py, y1 += py;
  auto sx = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - Rm); };
  auto sy = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

  // Fitted line through the centroid with the reported slope.
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<path d=\"M" << L << ' ' << T << " V" << H - B << " H" << W - Rm << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = static_cast<int>(std::ceil(x0 * 10)); k <= static_cast<int>(std::floor(x1 * 10)); ++k) {
    double const v = k / 10.0;
    s << "<path d=\"M" << fixed(sx(v)) << ' ' << H - B << " v5\" stroke=\"black\"/>"
      << "<text x=\"" << fixed(sx(v)) << "\" y=\"" << H - B + 20 << "\" font-size=\"11\" text-anchor=\"middle\">"
      << num(std::pow(10.0, v)).substr(0, 6) << "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(y0)); k <= static_cast<int>(std::floor(y1)); ++k) {
    s << "<path d=\"M" << L - 5 << ' ' << fixed(sy(k)) << " h5\" stroke=\"black\"/>"
      << "<text x=\"" << L - 8 << "\" y=\"" << fixed(sy(k) + 4) << "\" font-size=\"11\" text-anchor=\"end\">1e"
      << k << "</text>\n";
  }
  s << "<path d=\"M" << fixed(sx(x0)) << ' ' << fixed(sy(my + r.slope * (x0 - mx))) << " L" << fixed(sx(x1)) << ' '
    << fixed(sy(my + r.slope * (x1 - mx))) << "\" stroke=\"steelblue\" stroke-dasharray=\"6 4\" fill=\"none\"/>\n";
  for (std::size_t i = 0; i < lx.size(); ++i) {
    s << "<circle cx=\"" << fixed(sx(lx[i])) << "\" cy=\"" << fixed(sy(ly[i])) << "\" r=\"4\" fill=\"firebrick\"/>\n";
  }
  s << "<text x=\"" << (L + W - Rm) / 2 << "\" y=\"" << H - 15 << "\" font-size=\"13\" text-anchor=\"middle\">eps</text>\n";
  s << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << (T + H - B) / 2 << ")\">|tone gap|</text>\n";
  s << "<text x=\"" << L + 10 << "\" y=\"" << T + 5 << "\" font-size=\"13\">" << to_string(r.problem)
    << ", slope " << fixed(r.slope) << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

void write_file_atomic(std::string const &path, std::string const &content)
{
  namespace fs = std::filesystem;
  fs::path const target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("io", "cannot open " + tmp.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw Error("io", "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("io", "cannot rename onto " + target.string() + ": " + ec.message());
  }
}

} // namespace plate
