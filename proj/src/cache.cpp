#include "cuspsum/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstring>
#include <vector>

namespace cuspsum {

namespace {

std::uint64_t fnv1a(const unsigned char* p, std::size_t n, std::uint64_t h = 14695981039346656037ULL) {
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

void put_u16(std::vector<unsigned char>& b, std::uint16_t v) {
    b.push_back(static_cast<unsigned char>(v));
    b.push_back(static_cast<unsigned char>(v >> 8));
}
void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
void put_u64(std::vector<unsigned char>& b, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) b.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
void put_f64(std::vector<unsigned char>& b, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    put_u64(b, v);
}

struct Reader {
    const unsigned char* p;
    std::size_t n, off = 0;
    void need(std::size_t k) const {
        if (off + k > n) throw cache_error("cache: truncated file");
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(p[off] | (p[off + 1] << 8));
        off += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[off + i]) << (8 * i);
        off += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[off + i]) << (8 * i);
        off += 8;
        return v;
    }
    double f64() {
        std::uint64_t v = u64();
        double d;
        std::memcpy(&d, &v, 8);
        return d;
    }
};

}  // namespace

void cache_write(const std::string& path, const QExpansion& f) {
    std::vector<unsigned char> payload;
    if (!f.exact) {
        payload.reserve(static_cast<std::size_t>(f.n_max) * 8);
        for (std::int64_t n = 1; n <= f.n_max; ++n) put_f64(payload, f.a(n));
    } else {
        for (std::int64_t n = 1; n <= f.n_max; ++n) {
            const mpz_class& z = f.az(n);
            std::size_t nbytes = (mpz_sizeinbase(z.get_mpz_t(), 2) + 7) / 8;
            if (z == 0) nbytes = 0;
            std::int32_t slen = static_cast<std::int32_t>(nbytes);
            if (sgn(z) < 0) slen = -slen;
            put_u32(payload, static_cast<std::uint32_t>(slen));
            std::size_t count = 0;
            std::vector<unsigned char> buf(nbytes);
            if (nbytes)
                mpz_export(buf.data(), &count, -1 /*LSB first*/, 1, 0, 0, z.get_mpz_t());
            buf.resize(nbytes, 0);  // mpz_export may write fewer bytes than allocated
            payload.insert(payload.end(), buf.begin(), buf.end());
        }
    }

    std::vector<unsigned char> head;
    head.insert(head.end(), kCacheMagic, kCacheMagic + 8);
    put_u16(head, kCacheVersion);
    put_u16(head, static_cast<std::uint16_t>(f.weight));
    put_u64(head, static_cast<std::uint64_t>(f.n_max));
    put_u32(head, static_cast<std::uint32_t>(f.form_id.size()));
    head.insert(head.end(), f.form_id.begin(), f.form_id.end());
    put_u16(head, f.exact ? 1 : 0);
    put_u64(head, fnv1a(payload.data(), payload.size()));

    int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) throw cache_error("cache: cannot open for writing: " + path);
    ::flock(fd, LOCK_EX);  // advisory: one writer per cache file
    bool ok = true;
    auto write_all = [&](const unsigned char* p, std::size_t n) {
        std::size_t done = 0;
        while (done < n) {
            ssize_t w = ::write(fd, p + done, n - done);
            if (w <= 0) {
                ok = false;
                return;
            }
            done += static_cast<std::size_t>(w);
        }
    };
    write_all(head.data(), head.size());
    if (ok) write_all(payload.data(), payload.size());
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (!ok) throw cache_error("cache: short write: " + path);
}

QExpansion cache_read(const std::string& path, std::int64_t want_n) {
    std::vector<unsigned char> data;
    {
        FILE* fp = std::fopen(path.c_str(), "rb");
        if (!fp) throw cache_error("cache: cannot open: " + path);
        std::fseek(fp, 0, SEEK_END);
        long sz = std::ftell(fp);
        std::fseek(fp, 0, SEEK_SET);
        data.resize(static_cast<std::size_t>(sz));
        if (sz > 0 && std::fread(data.data(), 1, data.size(), fp) != data.size()) {
            std::fclose(fp);
            throw cache_error("cache: read failed: " + path);
        }
        std::fclose(fp);
    }
    Reader r{data.data(), data.size()};
    r.need(8);
    if (std::memcmp(r.p, kCacheMagic, 8) != 0) throw cache_error("cache: bad magic");
    r.off = 8;
    std::uint16_t version = r.u16();
    if (version != kCacheVersion)
        throw cache_error("cache: version mismatch (have " + std::to_string(version) + ")");
    QExpansion f;
    f.weight = r.u16();
    std::uint64_t N = r.u64();
    std::uint32_t idlen = r.u32();
    r.need(idlen);
    f.form_id.assign(reinterpret_cast<const char*>(r.p + r.off), idlen);
    r.off += idlen;
    std::uint16_t flags = r.u16();
    std::uint64_t want_sum = r.u64();

    if (want_n >= 0 && static_cast<std::uint64_t>(want_n) > N)
        throw cache_error("cache: insufficient cache (stored N = " + std::to_string(N) +
                          ", requested " + std::to_string(want_n) + ")");

    std::uint64_t got_sum = fnv1a(r.p + r.off, r.n - r.off);
    if (got_sum != want_sum) throw cache_error("cache: checksum mismatch");

    f.n_max = static_cast<std::int64_t>(N);
    f.exact = (flags & 1) != 0;
    f.coeffs.assign(N + 1, 0.0);
    if (!f.exact) {
        for (std::uint64_t n = 1; n <= N; ++n) f.coeffs[n] = r.f64();
    } else {
        f.zcoeffs.assign(N + 1, mpz_class(0));
        for (std::uint64_t n = 1; n <= N; ++n) {
            std::int32_t slen = static_cast<std::int32_t>(r.u32());
            std::size_t nbytes = static_cast<std::size_t>(slen < 0 ? -slen : slen);
            r.need(nbytes);
            if (nbytes) {
                mpz_import(f.zcoeffs[n].get_mpz_t(), nbytes, -1, 1, 0, 0, r.p + r.off);
                if (slen < 0) f.zcoeffs[n] = -f.zcoeffs[n];
                r.off += nbytes;
            }
            f.coeffs[n] = f.zcoeffs[n].get_d();
        }
    }
    return f;
}

}  // namespace cuspsum
