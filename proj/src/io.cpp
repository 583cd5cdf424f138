#include "bpst/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bpst/error.hpp"

namespace bpst {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

bool skippable(const std::vector<std::string>& tokens) { return tokens.empty() || tokens.front().front() == '#'; }

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

Instance parse_points(std::istream& in, const std::string& source) {
  Instance inst;
  bool header = false;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = split_ws(line);
    if (skippable(tokens)) continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (!header) {
      if (tokens.size() != 2 || tokens[0] != "bpst" || tokens[1] != "v1") {
        throw Error(ErrorKind::Parse, where + "expected header 'bpst v1'");
      }
      header = true;
      continue;
    }
    if (tokens.size() != 3) throw Error(ErrorKind::Parse, where + "expected 'x y color'");
    Point2 p;
    try {
      p = Point2{parse_coord(tokens[0]), parse_coord(tokens[1])};
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, where + e.detail());
    }
    Color c;
    if (tokens[2] == "R") {
      c = Color::Red;
    } else if (tokens[2] == "B") {
      c = Color::Blue;
    } else {
      throw Error(ErrorKind::Parse, where + "malformed color token '" + tokens[2] + "' (expected R or B)");
    }
    inst.points.push_back({p, c, inst.size()});
  }
  if (!header) throw Error(ErrorKind::Parse, source + ": missing header 'bpst v1'");
  if (inst.points.empty()) throw Error(ErrorKind::Parse, source + ": no points");
  return inst;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

Instance read_points(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  return parse_points(in, path.string());
}

std::string render_points(const Instance& inst) {
  std::string out = "bpst v1\n";
  for (const auto& p : inst.points) {
    out += format_coord(p.position.x) + " " + format_coord(p.position.y) + " " + color_char(p.color) + "\n";
  }
  return out;
}

Wide parse_length2(std::string_view text) {
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (whole.empty() || !digits(whole) || !digits(frac) || frac.size() > 12 || whole.size() > 26) {
    throw Error(ErrorKind::Parse, "malformed squared length '" + std::string(text) + "'");
  }
  Wide v = 0;
  for (char c : whole) v = v * 10 + (c - '0');
  for (std::size_t k = 0; k < 12; ++k) v = v * 10 + (k < frac.size() ? frac[k] - '0' : 0);
  return v * kSubunits * kSubunits;
}

std::string render_result(const ResultFile& r) {
  const double lambda = std::sqrt(length2_to_double(r.lambda2));
  const double bottleneck = std::sqrt(length2_to_double(r.bottleneck2));
  const double ratio = r.lambda2 == 0 ? 1.0 : bottleneck / lambda;
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::string out = "bpst-result v1\n";
  out += "n " + std::to_string(r.n) + "\n";
  out += "lambda_sq " + format_length2(r.lambda2) + "\n";
  out += "lambda " + fixed6(lambda) + "\n";
  out += "bottleneck_sq " + format_length2(r.bottleneck2) + "\n";
  out += "bottleneck " + fixed6(bottleneck) + "\n";
  out += "ratio " + fixed6(ratio) + "\n";
  out += std::string("ratio_bound_ok ") + flag(r.ratio_bound_ok) + "\n";
  out += std::string("spanning ") + flag(r.spanning) + "\n";
  out += std::string("bichromatic ") + flag(r.bichromatic) + "\n";
  out += std::string("planar ") + flag(r.planar) + "\n";
  out += "components " + std::to_string(r.components) + "\n";
  out += "edges " + std::to_string(r.edges.size()) + "\n";
  for (const auto& [a, b] : r.edges) out += std::to_string(a) + " " + std::to_string(b) + "\n";
  return out;
}

ResultFile parse_result(std::istream& in) {
  ResultFile r;
  std::string line;
  auto next = [&](const std::string& key) {
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "result file truncated before '" + key + "'");
    const auto tokens = split_ws(line);
    if (tokens.size() != 2 || tokens[0] != key) throw Error(ErrorKind::Parse, "expected '" + key + " <value>', got '" + line + "'");
    return tokens[1];
  };
  auto flag = [&](const std::string& key) {
    const std::string v = next(key);
    if (v != "true" && v != "false") throw Error(ErrorKind::Parse, "bad flag for '" + key + "'");
    return v == "true";
  };
  if (!std::getline(in, line) || line != "bpst-result v1") throw Error(ErrorKind::Parse, "expected header 'bpst-result v1'");
  try {
    r.n = std::stoi(next("n"));
    r.lambda2 = parse_length2(next("lambda_sq"));
    next("lambda");
    r.bottleneck2 = parse_length2(next("bottleneck_sq"));
    next("bottleneck");
    next("ratio");
    r.ratio_bound_ok = flag("ratio_bound_ok");
    r.spanning = flag("spanning");
    r.bichromatic = flag("bichromatic");
    r.planar = flag("planar");
    r.components = std::stoi(next("components"));
    const int m = std::stoi(next("edges"));
    for (int k = 0; k < m; ++k) {
      if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "result file truncated in edge list");
      const auto tokens = split_ws(line);
      if (tokens.size() != 2) throw Error(ErrorKind::Parse, "malformed edge line '" + line + "'");
      r.edges.emplace_back(std::stoi(tokens[0]), std::stoi(tokens[1]));
    }
  } catch (const std::logic_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed number in result file: ") + e.what());
  }
  return r;
}

namespace {

class SvgCanvas {
 public:
  SvgCanvas(Point2 lo, Point2 hi) : lo_(lo), hi_(hi) {
    const double extent = static_cast<double>(std::max<Coord>({hi.x - lo.x, hi.y - lo.y, 1}));
    scale_ = kSize / extent;
  }

  std::string x(Coord v) const { return num(static_cast<double>(v - lo_.x) * scale_ + kMargin); }
  std::string y(Coord v) const { return num(static_cast<double>(hi_.y - v) * scale_ + kMargin); }
  std::string width() const { return num(static_cast<double>(hi_.x - lo_.x) * scale_ + 2 * kMargin); }
  std::string height() const { return num(static_cast<double>(hi_.y - lo_.y) * scale_ + 2 * kMargin); }

  std::string polygon(const ConvexPolygon& poly, const std::string& style) const {
    std::string pts;
    for (const Point2& p : poly.vertices) pts += (pts.empty() ? "" : " ") + x(p.x) + "," + y(p.y);
    return "<polygon points=\"" + pts + "\" " + style + "/>\n";
  }

  std::string line(Point2 a, Point2 b, const std::string& style) const {
    return "<line x1=\"" + x(a.x) + "\" y1=\"" + y(a.y) + "\" x2=\"" + x(b.x) + "\" y2=\"" + y(b.y) + "\" " + style + "/>\n";
  }

 private:
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }

  static constexpr double kSize = 800.0;
  static constexpr double kMargin = 10.0;
  Point2 lo_;
  Point2 hi_;
  double scale_ = 1.0;
};

}  // namespace

std::string render_svg(const Instance& inst, const SvgLayers& layers) {
  Point2 lo = inst.pos(0);
  Point2 hi = lo;
  for (const auto& p : inst.points) {
    lo = {std::min(lo.x, p.position.x), std::min(lo.y, p.position.y)};
    hi = {std::max(hi.x, p.position.x), std::max(hi.y, p.position.y)};
  }
  const CellComplex* cx = layers.complex;
  if (cx != nullptr) {
    const GridFrame& f = cx->frame;
    lo = {std::min(lo.x, f.origin.x), std::min(lo.y, f.origin.y)};
    hi = {std::max(hi.x, f.origin.x + f.cols * f.cell_side), std::max(hi.y, f.origin.y + f.rows * f.cell_side)};
  }
  const SvgCanvas c(lo, hi);

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + c.width() + "\" height=\"" + c.height() + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + c.width() + "\" height=\"" + c.height() + "\" fill=\"white\"/>\n";

  if (cx != nullptr) {
    const GridFrame& f = cx->frame;
    if (layers.partition) {
      out += "<g class=\"partitioned\">\n";
      for (const auto& cell : cx->cells) {
        if (cell.status == CellStatus::Partitioned && cell.kind != CellKind::Empty) {
          out += c.polygon(f.square(cell.coords), "fill=\"#eeeeee\" stroke=\"none\"");
        }
      }
      out += "</g>\n<g class=\"lunes\">\n";
      for (const auto& lune : cx->lunes) {
        out += c.polygon(lune.shape, lune.half ? "fill=\"#fde9c4\" stroke=\"#e0a040\" stroke-width=\"0.5\""
                                               : "fill=\"#f6d28b\" stroke=\"#e0a040\" stroke-width=\"0.5\"");
      }
      out += "</g>\n";
    }
    if (layers.grid) {
      out += "<g class=\"grid\" stroke=\"#c8c8c8\" stroke-width=\"0.5\">\n";
      for (int col = 0; col <= f.cols; ++col) {
        const Coord gx = f.origin.x + col * f.cell_side;
        out += c.line({gx, f.origin.y}, {gx, f.origin.y + f.rows * f.cell_side}, "");
      }
      for (int row = 0; row <= f.rows; ++row) {
        const Coord gy = f.origin.y + row * f.cell_side;
        out += c.line({f.origin.x, gy}, {f.origin.x + f.cols * f.cell_side, gy}, "");
      }
      out += "</g>\n";
    }
    if (layers.regions) {
      out += "<g class=\"cells\">\n";
      for (const auto& fc : cx->final_cells) {
        out += c.polygon(fc.region, "fill=\"none\" stroke=\"#7a7a7a\" stroke-width=\"1\" stroke-dasharray=\"4,2\"");
      }
      out += "</g>\n";
    }
  }

  out += "<g class=\"star\" stroke=\"#444444\" stroke-width=\"1\">\n";
  for (const auto& [a, b] : layers.star_edges) out += c.line(inst.pos(a), inst.pos(b), "");
  out += "</g>\n<g class=\"link\" stroke=\"#2a9d4a\" stroke-width=\"2\">\n";
  for (const auto& [a, b] : layers.link_edges) out += c.line(inst.pos(a), inst.pos(b), "");
  out += "</g>\n<g class=\"points\">\n";
  for (const auto& p : inst.points) {
    out += "<circle cx=\"" + c.x(p.position.x) + "\" cy=\"" + c.y(p.position.y) + "\" r=\"3\" fill=\"" +
           (p.color == Color::Red ? "#d62728" : "#1f77b4") + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace bpst
