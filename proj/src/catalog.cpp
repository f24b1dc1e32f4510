#include "qfe/catalog.hpp"

#include "qfe/errors.hpp"

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace qfe::cli {

using io::Json;

std::string catalog_key(const QuadraticForm& f)
{
    if (!f.is_rational()) {
        throw UnsupportedField("the catalog holds rational forms only");
    }
    InvariantProfile p = invariant_profile(f);
    std::ostringstream key;
    key << "rank=" << p.rank << ";sig=" << p.signatures.at(0).plus << ","
        << p.signatures.at(0).minus << ";disc=" << p.disc.to_string() << ";eps-=";
    bool first = true;
    for (const auto& place : p.nontrivial_places()) {
        key << (first ? "" : ",") << place.to_string();
        first = false;
    }
    return key.str();
}

namespace {

// Exclusive or shared flock held for the lifetime of the object.
class LockedFile {
public:
    LockedFile(const std::string& path, bool exclusive)
    {
        fd_ = ::open(path.c_str(), exclusive ? (O_RDWR | O_CREAT | O_APPEND) : O_RDONLY, 0644);
        if (fd_ < 0) {
            if (!exclusive && errno == ENOENT) {
                return;
            }
            throw std::runtime_error("cannot open catalog " + path + ": " + std::strerror(errno));
        }
        if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
            ::close(fd_);
            throw std::runtime_error("cannot lock catalog " + path + ": " + std::strerror(errno));
        }
    }
    ~LockedFile()
    {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    LockedFile(const LockedFile&) = delete;
    LockedFile& operator=(const LockedFile&) = delete;

    int fd() const { return fd_; }

    std::string contents() const
    {
        std::string out;
        if (fd_ < 0) {
            return out;
        }
        char buf[4096];
        ::lseek(fd_, 0, SEEK_SET);
        ssize_t n = 0;
        while ((n = ::read(fd_, buf, sizeof buf)) > 0) {
            out.append(buf, static_cast<std::size_t>(n));
        }
        return out;
    }

private:
    int fd_ = -1;
};

std::vector<Json> parse_lines(const std::string& text)
{
    std::vector<Json> out;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) {
            continue;
        }
        try {
            out.push_back(Json::parse(line));
        } catch (const Json::parse_error&) {
            throw ParseError("catalog line " + std::to_string(number) + " is not JSON");
        }
    }
    return out;
}

void append_line(int fd, const Json& record)
{
    std::string line = record.dump() + "\n";
    const char* p = line.data();
    std::size_t left = line.size();
    while (left > 0) {
        ssize_t n = ::write(fd, p, left);
        if (n < 0) {
            throw std::runtime_error(std::string("catalog write failed: ") + std::strerror(errno));
        }
        p += n;
        left -= static_cast<std::size_t>(n);
    }
}

} // namespace

Catalog::Catalog(std::string path) : path_(std::move(path)) {}

std::string Catalog::default_path()
{
    if (const char* env = std::getenv("QFE_CATALOG"); env && *env) {
        return env;
    }
    return "qfe_catalog.jsonl";
}

std::vector<Json> Catalog::read_records() const
{
    LockedFile file(path_, false);
    return parse_lines(file.contents());
}

Json Catalog::add_locked(const QuadraticForm& f, std::vector<Json>& records, int fd)
{
    const std::string key = catalog_key(f);
    bool duplicate = false;
    for (const auto& r : records) {
        if (r.value("type", "") != "form" || r.value("key", "") != key) {
            continue;
        }
        QuadraticForm stored = io::parse_form(r.at("form"));
        if (!equivalent_over_Q(stored, f).equivalent) {
            throw IntegrityError("catalog key " + key + " shared by inequivalent forms");
        }
        duplicate = duplicate || stored == f;
    }
    if (!duplicate) {
        Json record{{"type", "form"}, {"key", key}, {"form", io::to_json(f)}};
        append_line(fd, record);
        records.push_back(std::move(record));
    }
    return Json{{"key", key}, {"stored", !duplicate}};
}

Json Catalog::add(const QuadraticForm& f)
{
    LockedFile file(path_, true);
    auto records = parse_lines(file.contents());
    return add_locked(f, records, file.fd());
}

Json Catalog::query(const QuadraticForm& f) const
{
    const std::string key = catalog_key(f);
    Json forms = Json::array();
    Json links = Json::array();
    for (const auto& r : read_records()) {
        std::string type = r.value("type", "");
        if (type == "form" && r.value("key", "") == key) {
            forms.push_back(r.at("form"));
        } else if (type == "link" && (r.value("from", "") == key || r.value("to", "") == key)) {
            links.push_back(r);
        }
    }
    return Json{{"key", key}, {"forms", forms}, {"links", links}};
}

Json Catalog::link(const QuadraticForm& f, const QuadraticForm& g, const FieldElement& q)
{
    LockedFile file(path_, true);
    auto records = parse_lines(file.contents());
    Json from = add_locked(f, records, file.fd());
    Json to = add_locked(g, records, file.fd());
    Json record{{"type", "link"},
                {"from", from.at("key")},
                {"to", to.at("key")},
                {"q", io::to_json(q)},
                {"from_form", io::to_json(f)},
                {"to_form", io::to_json(g)}};
    append_line(file.fd(), record);
    return record;
}

} // namespace qfe::cli
