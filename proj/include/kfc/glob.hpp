#pragma once
// Glob matching over '/'-separated relative paths: '*' and '?' stay within
// one path component, '**' spans zero or more components.

#include <string_view>
#include <vector>

namespace kfc {

namespace detail {

// Classic single-component glob with backtracking.
inline bool glob_component(std::string_view pat, std::string_view s) {
    size_t pi = 0, si = 0;
    size_t star_pi = std::string_view::npos, star_si = 0;
    while (si < s.size()) {
        if (pi < pat.size() && (pat[pi] == '?' || pat[pi] == s[si])) {
            ++pi;
            ++si;
        } else if (pi < pat.size() && pat[pi] == '*') {
            star_pi = pi++;
            star_si = si;
        } else if (star_pi != std::string_view::npos) {
            pi = star_pi + 1;
            si = ++star_si;
        } else {
            return false;
        }
    }
    while (pi < pat.size() && pat[pi] == '*') ++pi;
    return pi == pat.size();
}

inline std::vector<std::string_view> split_path(std::string_view p) {
    std::vector<std::string_view> parts;
    size_t pos = 0;
    while (pos <= p.size()) {
        const size_t next = p.find('/', pos);
        if (next == std::string_view::npos) {
            parts.push_back(p.substr(pos));
            break;
        }
        parts.push_back(p.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

inline bool glob_parts(const std::vector<std::string_view>& pat, size_t pi,
                       const std::vector<std::string_view>& path, size_t si) {
    if (pi == pat.size()) return si == path.size();
    if (pat[pi] == "**")
        return glob_parts(pat, pi + 1, path, si) ||
               (si < path.size() && glob_parts(pat, pi, path, si + 1));
    return si < path.size() && glob_component(pat[pi], path[si]) &&
           glob_parts(pat, pi + 1, path, si + 1);
}

} // namespace detail

// Matches a root-relative path ("a/b/c.txt") against a glob pattern.
inline bool glob_match(std::string_view pattern, std::string_view path) {
    return detail::glob_parts(detail::split_path(pattern), 0, detail::split_path(path), 0);
}

} // namespace kfc
