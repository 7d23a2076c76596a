//! Code-host clients: GitHub's graph query endpoint, the PapersWithCode REST
//! listing, and a catalog-backed host for offline runs.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, IoContext, Result};
use crate::http::{HttpClient, HttpResponse};
use crate::model::{Host, RepoRef, ResearchVerdict};
use crate::ratelimit::RateLimiter;

/// Terms that mark a README or description as research-oriented.
pub const RESEARCH_TERMS: [&str; 3] = ["citation", "doi", "arxiv"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostQuery<'a> {
    pub keyword: &'a str,
    /// Research-indicative term that must co-occur with the keyword, if the host needs one.
    pub co_term: Option<&'a str>,
    pub language: &'a str,
    pub min_stars: u64,
    pub page_size: usize,
}

#[derive(Debug, Clone, Default)]
pub struct SearchPage {
    pub repos: Vec<RepoRef>,
    pub next_cursor: Option<String>,
}

pub trait CodeHost: Send + Sync {
    fn host(&self) -> Host;

    /// Whether queries must pair the keyword with each research term. Hosts that
    /// only index paper code return false.
    fn needs_research_terms(&self) -> bool {
        true
    }

    fn search_page(&self, query: &HostQuery<'_>, cursor: Option<&str>) -> Result<SearchPage>;

    /// README text, or `None` when the repository has none.
    fn readme(&self, repo: &RepoRef) -> Result<Option<String>>;
}

fn blank_repo(host: Host, owner: &str, name: &str, url: String) -> RepoRef {
    RepoRef {
        host,
        owner: owner.to_string(),
        name: name.to_string(),
        url,
        stars: 0,
        primary_language: String::new(),
        discipline_ids: Vec::new(),
        found_by_queries: Vec::new(),
        research_verdict: ResearchVerdict::Unjudged,
        paper_links: Vec::new(),
        license_id: None,
        classification: None,
    }
}

fn status_error(service: &str, resp: &HttpResponse) -> Option<Error> {
    match resp.status {
        200..=299 => None,
        401 => Some(Error::AuthError(service.to_string())),
        403 | 429 if resp.retry_after.is_some() || resp.body.to_ascii_lowercase().contains("rate limit") => {
            Some(Error::RateLimited {
                host: service.to_string(),
                retry_after_s: resp.retry_after.unwrap_or(60),
            })
        }
        403 => Some(Error::AuthError(service.to_string())),
        404 => None,
        s => Some(Error::ProviderUnavailable(format!(
            "{service} returned HTTP {s}: {}",
            resp.body.chars().take(200).collect::<String>()
        ))),
    }
}

pub struct GithubGraphql {
    endpoint: String,
    token: String,
    client: HttpClient,
    limiter: RateLimiter,
}

const SEARCH_QUERY: &str = "query($q: String!, $first: Int!, $after: String) {
  search(query: $q, type: REPOSITORY, first: $first, after: $after) {
    pageInfo { hasNextPage endCursor }
    nodes {
      ... on Repository {
        name
        owner { login }
        url
        stargazerCount
        primaryLanguage { name }
        licenseInfo { spdxId name }
      }
    }
  }
}";

const README_QUERY: &str = "query($owner: String!, $name: String!) {
  repository(owner: $owner, name: $name) {
    md: object(expression: \"HEAD:README.md\") { ... on Blob { text } }
    lower: object(expression: \"HEAD:readme.md\") { ... on Blob { text } }
    rst: object(expression: \"HEAD:README.rst\") { ... on Blob { text } }
    plain: object(expression: \"HEAD:README\") { ... on Blob { text } }
  }
}";

impl GithubGraphql {
    pub const DEFAULT_ENDPOINT: &'static str = "https://api.github.com/graphql";

    pub fn new(endpoint: impl Into<String>, token: impl Into<String>) -> Self {
        Self {
            endpoint: endpoint.into(),
            token: token.into(),
            client: HttpClient::new(Duration::from_secs(60)),
            // secondary limits punish bursts well below the hourly budget
            limiter: RateLimiter::new(5, 1.0),
        }
    }

    /// Search qualifier string for one keyword/term pairing.
    pub fn search_string(query: &HostQuery<'_>) -> String {
        let mut q = format!("\"{}\"", query.keyword.replace('"', ""));
        if let Some(term) = query.co_term {
            q.push(' ');
            q.push_str(term);
        }
        q.push_str(" in:readme,description");
        if !query.language.is_empty() {
            q.push_str(&format!(" language:{}", query.language));
        }
        q.push_str(&format!(" stars:>={}", query.min_stars));
        q
    }

    fn post(&self, query: &str, variables: Value) -> Result<Value> {
        self.limiter.acquire();
        let resp = self
            .client
            .post_json(
                &self.endpoint,
                &[("authorization", format!("bearer {}", self.token))],
                &json!({ "query": query, "variables": variables }),
            )
            .map_err(|e| Error::ProviderUnavailable(format!("github: {e}")))?;
        if let Some(err) = status_error("github", &resp) {
            return Err(err);
        }
        let value: Value = serde_json::from_str(&resp.body)?;
        if let Some(errors) = value.get("errors").and_then(Value::as_array) {
            if errors.iter().any(|e| e["type"] == "RATE_LIMITED") {
                return Err(Error::RateLimited {
                    host: "github".into(),
                    retry_after_s: resp.retry_after.unwrap_or(60),
                });
            }
            if value.get("data").is_none_or(Value::is_null) {
                return Err(Error::ProviderUnavailable(format!("github: {}", Value::Array(errors.clone()))));
            }
        }
        Ok(value)
    }

    pub fn parse_search(value: &Value) -> SearchPage {
        let search = &value["data"]["search"];
        let repos = search["nodes"]
            .as_array()
            .map(|nodes| {
                nodes
                    .iter()
                    .filter_map(|node| {
                        let owner = node["owner"]["login"].as_str()?;
                        let name = node["name"].as_str()?;
                        let url = node["url"]
                            .as_str()
                            .map(str::to_string)
                            .unwrap_or_else(|| format!("https://github.com/{owner}/{name}"));
                        let mut repo = blank_repo(Host::Github, owner, name, url);
                        repo.stars = node["stargazerCount"].as_u64().unwrap_or(0);
                        repo.primary_language = node["primaryLanguage"]["name"]
                            .as_str()
                            .unwrap_or_default()
                            .to_string();
                        repo.license_id = match node["licenseInfo"]["spdxId"].as_str() {
                            Some("NOASSERTION") => node["licenseInfo"]["name"].as_str().map(str::to_string),
                            other => other.map(str::to_string),
                        };
                        Some(repo)
                    })
                    .collect()
            })
            .unwrap_or_default();
        let info = &search["pageInfo"];
        let next_cursor = if info["hasNextPage"].as_bool().unwrap_or(false) {
            info["endCursor"].as_str().map(str::to_string)
        } else {
            None
        };
        SearchPage { repos, next_cursor }
    }
}

impl CodeHost for GithubGraphql {
    fn host(&self) -> Host {
        Host::Github
    }

    fn search_page(&self, query: &HostQuery<'_>, cursor: Option<&str>) -> Result<SearchPage> {
        let value = self.post(
            SEARCH_QUERY,
            json!({
                "q": Self::search_string(query),
                "first": query.page_size.clamp(1, 100),
                "after": cursor,
            }),
        )?;
        Ok(Self::parse_search(&value))
    }

    fn readme(&self, repo: &RepoRef) -> Result<Option<String>> {
        let value = self.post(README_QUERY, json!({ "owner": repo.owner, "name": repo.name }))?;
        let repository = &value["data"]["repository"];
        if repository.is_null() {
            return Err(Error::Gone(repo.key()));
        }
        Ok(["md", "lower", "rst", "plain"]
            .iter()
            .find_map(|k| repository[*k]["text"].as_str())
            .map(str::to_string))
    }
}

pub struct PapersWithCode {
    base_url: String,
    readme_base: String,
    client: HttpClient,
    limiter: RateLimiter,
}

#[derive(Deserialize)]
struct PwcPage {
    #[serde(default)]
    next: Option<String>,
    #[serde(default)]
    results: Vec<PwcResult>,
}

#[derive(Deserialize)]
struct PwcResult {
    #[serde(default)]
    paper: Option<PwcPaper>,
    #[serde(default)]
    repository: Option<PwcRepository>,
}

#[derive(Deserialize)]
struct PwcPaper {
    #[serde(default)]
    url_abs: Option<String>,
    #[serde(default)]
    url_pdf: Option<String>,
}

#[derive(Deserialize)]
struct PwcRepository {
    url: String,
    #[serde(default)]
    owner: Option<String>,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    stars: Option<u64>,
    #[serde(default)]
    framework: Option<String>,
}

/// Frameworks whose reference implementations are Python code.
const PYTHON_FRAMEWORKS: [&str; 6] = ["pytorch", "tf", "tensorflow", "jax", "mxnet", "paddle"];

impl PapersWithCode {
    pub const DEFAULT_BASE: &'static str = "https://paperswithcode.com/api/v1";
    pub const DEFAULT_README_BASE: &'static str = "https://raw.githubusercontent.com";

    pub fn new(base_url: impl Into<String>, readme_base: impl Into<String>) -> Self {
        Self {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            readme_base: readme_base.into().trim_end_matches('/').to_string(),
            client: HttpClient::new(Duration::from_secs(60)),
            limiter: RateLimiter::new(2, 1.0),
        }
    }

    fn parse_page(body: &str) -> Result<SearchPage> {
        let page: PwcPage = serde_json::from_str(body)?;
        let repos = page
            .results
            .into_iter()
            .filter_map(|r| {
                let repository = r.repository?;
                let mut segments = repository.url.trim_end_matches('/').rsplit('/');
                let name = repository.name.or_else(|| segments.next().map(str::to_string))?;
                let owner = repository.owner.or_else(|| segments.next().map(str::to_string))?;
                let mut repo = blank_repo(Host::Paperswithcode, &owner, &name, repository.url.clone());
                repo.stars = repository.stars.unwrap_or(0);
                repo.primary_language = match repository.framework.as_deref() {
                    Some(fw) if PYTHON_FRAMEWORKS.contains(&fw.to_ascii_lowercase().as_str()) => "Python".into(),
                    _ => String::new(),
                };
                if let Some(paper) = r.paper {
                    repo.paper_links.extend(paper.url_abs.or(paper.url_pdf));
                }
                Some(repo)
            })
            .collect();
        Ok(SearchPage {
            repos,
            next_cursor: page.next,
        })
    }
}

impl CodeHost for PapersWithCode {
    fn host(&self) -> Host {
        Host::Paperswithcode
    }

    fn needs_research_terms(&self) -> bool {
        false
    }

    fn search_page(&self, query: &HostQuery<'_>, cursor: Option<&str>) -> Result<SearchPage> {
        self.limiter.acquire();
        let resp = match cursor {
            // `next` is an absolute URL carrying the page parameters
            Some(next) => self.client.get(next, &[], &[]),
            None => self.client.get(
                &format!("{}/search/", self.base_url),
                &[
                    ("q", query.keyword.to_string()),
                    ("items_per_page", query.page_size.to_string()),
                ],
                &[],
            ),
        }
        .map_err(|e| Error::ProviderUnavailable(format!("paperswithcode: {e}")))?;
        if let Some(err) = status_error("paperswithcode", &resp) {
            return Err(err);
        }
        if resp.status == 404 {
            return Ok(SearchPage::default());
        }
        Self::parse_page(&resp.body)
    }

    fn readme(&self, repo: &RepoRef) -> Result<Option<String>> {
        self.limiter.acquire();
        let url = format!("{}/{}/{}/HEAD/README.md", self.readme_base, repo.owner, repo.name);
        let resp = self
            .client
            .get(&url, &[], &[])
            .map_err(|e| Error::ProviderUnavailable(format!("readme fetch: {e}")))?;
        match resp.status {
            200..=299 => Ok(Some(resp.body)),
            404 => Ok(None),
            _ => Err(status_error("readme fetch", &resp)
                .unwrap_or_else(|| Error::ProviderUnavailable(format!("HTTP {}", resp.status)))),
        }
    }
}

/// One repository in an offline catalog.
#[derive(Debug, Clone, Deserialize)]
pub struct CatalogEntry {
    pub host: Host,
    pub owner: String,
    pub name: String,
    #[serde(default)]
    pub url: Option<String>,
    pub stars: u64,
    pub primary_language: String,
    #[serde(default)]
    pub description: String,
    /// README path relative to the catalog file; absent means the repository has no README.
    #[serde(default)]
    pub readme: Option<PathBuf>,
    #[serde(default)]
    pub license_id: Option<String>,
    #[serde(default)]
    pub paper_links: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
struct Catalog {
    repos: Vec<CatalogEntry>,
}

/// Serves search results from a JSON catalog, with the same matching rules as the live hosts.
pub struct CatalogHost {
    host: Host,
    root: PathBuf,
    entries: Vec<CatalogEntry>,
}

impl CatalogHost {
    pub fn load(path: &Path, host: Host) -> Result<Self> {
        let bytes = std::fs::read(path).with_path("read host catalog", path)?;
        let catalog: Catalog = serde_json::from_slice(&bytes)?;
        Ok(Self {
            host,
            root: path.parent().map(Path::to_path_buf).unwrap_or_default(),
            entries: catalog.repos.into_iter().filter(|e| e.host == host).collect(),
        })
    }

    fn readme_text(&self, entry: &CatalogEntry) -> Result<Option<String>> {
        match &entry.readme {
            Some(rel) => {
                let path = self.root.join(rel);
                std::fs::read_to_string(&path).with_path("read readme", &path).map(Some)
            }
            None => Ok(None),
        }
    }

    fn matches(&self, entry: &CatalogEntry, query: &HostQuery<'_>) -> Result<bool> {
        let mut text = entry.description.to_lowercase();
        if let Some(readme) = self.readme_text(entry)? {
            text.push('\n');
            text.push_str(&readme.to_lowercase());
        }
        let keyword_hit = text.contains(&query.keyword.to_lowercase());
        let term_hit = query.co_term.is_none_or(|t| text.contains(&t.to_lowercase()));
        Ok(keyword_hit && term_hit)
    }
}

impl CodeHost for CatalogHost {
    fn host(&self) -> Host {
        self.host
    }

    fn needs_research_terms(&self) -> bool {
        self.host == Host::Github
    }

    fn search_page(&self, query: &HostQuery<'_>, cursor: Option<&str>) -> Result<SearchPage> {
        let mut hits = Vec::new();
        for entry in &self.entries {
            if self.matches(entry, query)? {
                hits.push(entry);
            }
        }
        let start: usize = cursor.and_then(|c| c.parse().ok()).unwrap_or(0);
        let size = query.page_size.max(1);
        let repos = hits
            .iter()
            .skip(start)
            .take(size)
            .map(|e| {
                let url = e
                    .url
                    .clone()
                    .unwrap_or_else(|| format!("https://github.com/{}/{}", e.owner, e.name));
                let mut repo = blank_repo(e.host, &e.owner, &e.name, url);
                repo.stars = e.stars;
                repo.primary_language = e.primary_language.clone();
                repo.license_id = e.license_id.clone();
                repo.paper_links = e.paper_links.clone();
                repo
            })
            .collect();
        let next = start + size;
        Ok(SearchPage {
            repos,
            next_cursor: (next < hits.len()).then(|| next.to_string()),
        })
    }

    fn readme(&self, repo: &RepoRef) -> Result<Option<String>> {
        let key = repo.key();
        match self.entries.iter().find(|e| {
            crate::model::canonical_repo_key(&e.owner, &e.name).is_ok_and(|k| k == key)
        }) {
            Some(entry) => self.readme_text(entry),
            None => Err(Error::Gone(key)),
        }
    }
}
