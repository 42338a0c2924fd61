#include "nonloc/errors.hpp"
#include "nonloc/grid.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace nonloc {

namespace {

std::string join(const Point& p, int dim) {
    std::string out;
    char buf[40];
    for (int a = 0; a < dim; ++a) {
        std::snprintf(buf, sizeof buf, "%.17g", p[a]);
        if (a > 0) {
            out += ',';
        }
        out += buf;
    }
    return out;
}

Point split(const std::string& text, int dim, const std::string& key) {
    Point p{0.0, 0.0};
    std::istringstream in(text);
    std::string item;
    int a = 0;
    while (std::getline(in, item, ',')) {
        if (a >= dim) {
            throw InvalidArgument("grid header: too many components in '" + key + "'");
        }
        try {
            p[a++] = std::stod(item);
        } catch (const std::exception&) {
            throw InvalidArgument("grid header: bad number in '" + key + "'");
        }
    }
    if (a != dim) {
        throw InvalidArgument("grid header: expected " + std::to_string(dim) + " components in '" + key + "'");
    }
    return p;
}

}  // namespace

std::string format_grid(const GridFunction& f) {
    const Domain& d = f.domain();
    std::string exterior = "zero";
    if (const auto* tail = std::get_if<TailExterior>(&f.exterior())) {
        exterior = "tail:" + tail->name;
    }
    std::ostringstream out;
    out << "nonloc-grid v1 dim=" << d.dim() << " h=" << join(d.h(), d.dim()) << " lo=" << join(d.lo(), d.dim())
        << " hi=" << join(d.hi(), d.dim()) << " exterior=" << exterior << '\n';
    char buf[40];
    for (double v : f.values()) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out << buf;
    }
    return out.str();
}

GridFunction parse_grid(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) {
        throw InvalidArgument("grid file is empty");
    }
    std::istringstream hs(header);
    std::string magic, version;
    hs >> magic >> version;
    if (magic != "nonloc-grid" || version != "v1") {
        throw InvalidArgument("not a nonloc-grid v1 file");
    }
    std::map<std::string, std::string> fields;
    std::string token;
    while (hs >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument("grid header: malformed field '" + token + "'");
        }
        fields[token.substr(0, eq)] = token.substr(eq + 1);
    }
    for (const char* key : {"dim", "h", "lo", "hi", "exterior"}) {
        if (!fields.count(key)) {
            throw InvalidArgument(std::string("grid header: missing '") + key + "'");
        }
    }
    const int dim = std::stoi(fields["dim"]);
    if (dim != 1 && dim != 2) {
        throw InvalidArgument("grid header: dim must be 1 or 2");
    }
    const Domain domain(dim, split(fields["lo"], dim, "lo"), split(fields["hi"], dim, "hi"),
                        split(fields["h"], dim, "h"));

    Exterior exterior = ZeroExterior{};
    const std::string& ext = fields["exterior"];
    if (ext.rfind("tail:", 0) == 0) {
        exterior = lookup_tail(ext.substr(5));
    } else if (ext != "zero") {
        throw InvalidArgument("grid header: unknown exterior '" + ext + "'");
    }

    std::vector<double> values;
    values.reserve(domain.size());
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            values.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw InvalidArgument("grid file: bad value '" + line + "'");
        }
    }
    return GridFunction(domain, std::move(values), std::move(exterior));
}

void write_grid(const GridFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(path, "cannot open for writing");
    }
    out << format_grid(f);
    if (!out) {
        throw IoError(path, "write failed");
    }
}

GridFunction read_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path, "cannot open for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grid(buf.str());
}

}  // namespace nonloc
