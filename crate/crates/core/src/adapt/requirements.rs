use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::model::hex_string;

/// Top-level standard-library module names (CPython 3.10 plus `tomllib`).
pub const STDLIB_MODULES: &[&str] = &[
    "__future__", "_thread", "abc", "aifc", "antigravity", "argparse", "array", "ast", "asynchat",
    "asyncio", "asyncore", "atexit", "audioop", "base64", "bdb", "binascii", "binhex", "bisect",
    "builtins", "bz2", "cProfile", "calendar", "cgi", "cgitb", "chunk", "cmath", "cmd", "code",
    "codecs", "codeop", "collections", "colorsys", "compileall", "concurrent", "configparser",
    "contextlib", "contextvars", "copy", "copyreg", "crypt", "csv", "ctypes", "curses",
    "dataclasses", "datetime", "dbm", "decimal", "difflib", "dis", "distutils", "doctest", "email",
    "encodings", "ensurepip", "enum", "errno", "faulthandler", "fcntl", "filecmp", "fileinput",
    "fnmatch", "fractions", "ftplib", "functools", "gc", "genericpath", "getopt", "getpass",
    "gettext", "glob", "graphlib", "grp", "gzip", "hashlib", "heapq", "hmac", "html", "http",
    "idlelib", "imaplib", "imghdr", "imp", "importlib", "inspect", "io", "ipaddress", "itertools",
    "json", "keyword", "lib2to3", "linecache", "locale", "logging", "lzma", "mailbox", "mailcap",
    "marshal", "math", "mimetypes", "mmap", "modulefinder", "msilib", "msvcrt", "multiprocessing",
    "netrc", "nis", "nntplib", "nt", "ntpath", "nturl2path", "numbers", "opcode", "operator",
    "optparse", "os", "ossaudiodev", "pathlib", "pdb", "pickle", "pickletools", "pipes", "pkgutil",
    "platform", "plistlib", "poplib", "posix", "posixpath", "pprint", "profile", "pstats", "pty",
    "pwd", "py_compile", "pyclbr", "pydoc", "pydoc_data", "pyexpat", "queue", "quopri", "random",
    "re", "readline", "reprlib", "resource", "rlcompleter", "runpy", "sched", "secrets", "select",
    "selectors", "shelve", "shlex", "shutil", "signal", "site", "smtpd", "smtplib", "sndhdr",
    "socket", "socketserver", "spwd", "sqlite3", "sre_compile", "sre_constants", "sre_parse",
    "ssl", "stat", "statistics", "string", "stringprep", "struct", "subprocess", "sunau",
    "symtable", "sys", "sysconfig", "syslog", "tabnanny", "tarfile", "telnetlib", "tempfile",
    "termios", "textwrap", "this", "threading", "time", "timeit", "tkinter", "token", "tokenize",
    "tomllib", "trace", "traceback", "tracemalloc", "tty", "turtle", "turtledemo", "types",
    "typing", "unicodedata", "unittest", "urllib", "uu", "uuid", "venv", "warnings", "wave",
    "weakref", "webbrowser", "winreg", "winsound", "wsgiref", "xdrlib", "xml", "xmlrpc", "zipapp",
    "zipfile", "zipimport", "zlib", "zoneinfo",
];

const IMPORT_MAP_TSV: &str = include_str!("import_map.tsv");

/// Import name → distribution name, from the bundled table.
pub fn import_map() -> &'static HashMap<&'static str, &'static str> {
    static MAP: OnceLock<HashMap<&'static str, &'static str>> = OnceLock::new();
    MAP.get_or_init(|| {
        IMPORT_MAP_TSV
            .lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
            .filter_map(|l| l.split_once('\t'))
            .map(|(i, d)| (i.trim(), d.trim()))
            .collect()
    })
}

pub fn is_stdlib(module: &str) -> bool {
    STDLIB_MODULES.binary_search(&module).is_ok()
}

/// Distribution for an import name; unknown names pass through unchanged.
pub fn distribution_for(import: &str) -> &str {
    import_map().get(import).copied().unwrap_or(import)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvSpec {
    /// Sorted, deduplicated distribution names.
    pub requirements: Vec<String>,
    pub env_id: String,
}

impl EnvSpec {
    pub fn new<I: IntoIterator<Item = String>>(requirements: I) -> Self {
        let requirements: Vec<String> = requirements.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut hasher = Sha256::new();
        for r in &requirements {
            hasher.update(r.as_bytes());
            hasher.update(b"\n");
        }
        let env_id = hex_string(&hasher.finalize())[..16].to_string();
        Self { requirements, env_id }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Blanks out string literals and comments so import detection sees only code.
/// Triple-quoted strings may span lines.
fn code_only(source: &str) -> String {
    let bytes = source.as_bytes();
    let mut out = String::with_capacity(source.len());
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c == b'"' || c == b'\'' {
            let triple = bytes.len() >= i + 3 && bytes[i + 1] == c && bytes[i + 2] == c;
            let quote_len = if triple { 3 } else { 1 };
            i += quote_len;
            out.push(' ');
            while i < bytes.len() {
                if bytes[i] == b'\\' {
                    i += 2;
                    continue;
                }
                if !triple && bytes[i] == b'\n' {
                    break;
                }
                if bytes[i] == c && (!triple || (bytes.len() >= i + 3 && bytes[i + 1] == c && bytes[i + 2] == c)) {
                    i += quote_len;
                    break;
                }
                if bytes[i] == b'\n' {
                    out.push('\n');
                }
                i += 1;
            }
            continue;
        }
        // copy a full UTF-8 character
        let ch_len = source[i..].chars().next().map_or(1, char::len_utf8);
        out.push_str(&source[i..i + ch_len]);
        i += ch_len;
    }
    out
}

/// Top-level module names of absolute imports, in order of first appearance.
pub fn imported_modules(code: &str) -> Vec<String> {
    let cleaned = code_only(code);
    let mut seen = Vec::new();
    let mut push = |name: &str| {
        let top = name.split('.').next().unwrap_or_default().trim();
        if is_identifier(top) && !seen.iter().any(|s: &String| s == top) {
            seen.push(top.to_string());
        }
    };
    for line in cleaned.lines() {
        for stmt in line.split(';') {
            let words: Vec<&str> = stmt.split_whitespace().collect();
            match words.as_slice() {
                ["import", ..] => {
                    let rest = stmt.trim_start().trim_start_matches("import");
                    for part in rest.split(',') {
                        let module = part.split_whitespace().next().unwrap_or_default();
                        push(module.trim_matches(|c| c == '(' || c == ')'));
                    }
                }
                ["from", module, "import", ..] if !module.starts_with('.') => push(module),
                _ => {}
            }
        }
    }
    seen
}

/// Module names a workspace provides itself: `.py` file stems and directory names
/// of repository-relative paths.
pub fn local_module_names(repo_paths: &[String]) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    for path in repo_paths {
        let mut parts: Vec<&str> = path.split('/').collect();
        let file = parts.pop().unwrap_or_default();
        if let Some(stem) = file.strip_suffix(".py") {
            names.insert(stem.to_string());
        }
        names.extend(parts.into_iter().map(str::to_string));
    }
    names
}

/// Static requirement inference: absolute imports minus standard-library and
/// workspace-local names, mapped to distributions.
pub fn infer_requirements(code: &str, repo_paths: &[String]) -> EnvSpec {
    let local = local_module_names(repo_paths);
    EnvSpec::new(
        imported_modules(code)
            .into_iter()
            .filter(|m| !is_stdlib(m) && !local.contains(m))
            .map(|m| distribution_for(&m).to_string()),
    )
}
