#include "gq/emit.hpp"

#include <sstream>
#include <stdexcept>

namespace gq {

std::string units_to_csv(const BsGroupoid& bs, const std::vector<UnitLeaf>& units) {
    std::ostringstream os;
    os << "index,unit";
    for (int k = 1; k <= bs.params().n; ++k) os << ",c" << k;
    os << "\n";
    os.precision(17);
    for (std::size_t i = 0; i < units.size(); ++i) {
        os << i << "," << units[i].str();
        for (double c : bs.c_values(units[i])) os << "," << c;
        os << "\n";
    }
    return os.str();
}

namespace {

double sx(double c) { return 40.0 + 420.0 * c; }
double sy(double c) { return 460.0 - 420.0 * c; }

} // namespace

std::string units_to_svg(const BsGroupoid& bs, const std::vector<UnitLeaf>& units) {
    const int n = bs.params().n;
    if (n != 1 && n != 2)
        throw std::invalid_argument("units_to_svg: figures are drawn for n in {1,2} only");
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" "
          "viewBox=\"0 0 500 500\">\n";
    if (n == 1) {
        const double y = 250.0;
        os << "  <line x1=\"" << sx(0) << "\" y1=\"" << y << "\" x2=\"" << sx(1) << "\" y2=\"" << y
           << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        for (const auto& u : units) {
            const double c = bs.c_values(u)[0];
            os << "  <circle cx=\"" << sx(c) << "\" cy=\"" << y
               << "\" r=\"4\" fill=\"steelblue\"/>\n";
        }
    } else {
        // the simplex 0 <= c1 <= c2 <= 1
        os << "  <polygon points=\"" << sx(0) << "," << sy(0) << " " << sx(0) << "," << sy(1) << " "
           << sx(1) << "," << sy(1) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        for (const auto& u : units) {
            const auto c = bs.c_values(u);
            os << "  <circle cx=\"" << sx(c[0]) << "\" cy=\"" << sy(c[1])
               << "\" r=\"3.5\" fill=\"steelblue\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace gq
