//! Repository discovery: keyword expansion, host search, README research
//! classification, and dedup/exclusion.

pub mod hosts;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use tracing::warn;

use crate::error::{Error, IoContext, Result};
use crate::llm::templates::{self, render_within};
use crate::llm::{parse_path_list, parse_yes_no, Gateway, LLMExchange, ModelRole, TemplateId, YesNo};
use crate::model::{canonical_repo_key, repo_key_from_url, ClassificationRecord, Discipline, Host, RepoRef, ResearchVerdict};

pub use hosts::{CatalogHost, CodeHost, GithubGraphql, HostQuery, PapersWithCode, SearchPage, RESEARCH_TERMS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchQuery {
    pub discipline_id: String,
    pub keyword: String,
    pub host: Host,
}

/// Canonical repository keys barred from collection.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExclusionList {
    pub entries: HashSet<String>,
    pub source_labels: HashMap<String, String>,
}

impl ExclusionList {
    pub fn insert(&mut self, owner_name: &str, label: &str) -> Result<()> {
        let key = if owner_name.contains("://") {
            repo_key_from_url(owner_name)?
        } else {
            let (owner, name) = owner_name
                .trim()
                .trim_end_matches('/')
                .split_once('/')
                .ok_or_else(|| Error::InvalidIdentifier(format!("`{owner_name}` is not owner/name")))?;
            canonical_repo_key(owner, name)?
        };
        self.source_labels.insert(key.clone(), label.to_string());
        self.entries.insert(key);
        Ok(())
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reads newline-delimited `owner/name` entries; blank lines and `#` comments are skipped.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_path("read exclusion list", path)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let mut list = Self::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            list.insert(line, &label).map_err(|e| {
                Error::Config(format!("{}:{}: {e}", path.display(), n + 1))
            })?;
        }
        Ok(list)
    }
}

const KEYWORDS_REMINDER: &str = "Reply with a single line in the format KEYWORDS: [keyword, keyword, ...]";

/// Seeds plus model-proposed related keywords, deduplicated case-insensitively, seeds first.
pub fn expand_keywords(
    gateway: &Gateway,
    discipline: &Discipline,
    log: &mut Vec<LLMExchange>,
) -> Result<Vec<String>> {
    let seeds: Vec<&str> = discipline
        .seed_keywords
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    if seeds.is_empty() {
        return Err(Error::EmptySeeds(discipline.id.clone()));
    }
    let prompt = templates::render(
        TemplateId::KeywordExpand,
        &templates::bindings([
            ("discipline", &discipline.display_name),
            ("seeds", &seeds.join(", ")),
        ]),
    )?;
    let proposed = match gateway.complete_parsed(
        TemplateId::KeywordExpand,
        &prompt,
        ModelRole::General,
        KEYWORDS_REMINDER,
        log,
        |reply| parse_path_list(reply, "KEYWORDS"),
    ) {
        Ok(list) => list,
        Err(Error::MalformedReply(reason)) => {
            warn!(discipline = %discipline.id, %reason, "keyword expansion unparseable; using seeds only");
            Vec::new()
        }
        Err(e) => return Err(e),
    };
    let mut seen = HashSet::new();
    Ok(seeds
        .into_iter()
        .map(str::to_string)
        .chain(proposed.into_iter().map(|k| k.trim().to_string()))
        .filter(|k| !k.is_empty() && seen.insert(k.to_lowercase()))
        .collect())
}

#[derive(Debug, Clone)]
pub struct SearchLimits {
    pub min_stars: u64,
    pub language: String,
    pub page_cap: usize,
    pub page_size: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            min_stars: 10,
            language: "Python".into(),
            page_cap: 10,
            page_size: 100,
        }
    }
}

/// All repositories the host returns for `query`, paginated up to the page cap and
/// restricted to the language filter and star floor.
pub fn search_host(host: &dyn CodeHost, query: &SearchQuery, limits: &SearchLimits) -> Result<Vec<RepoRef>> {
    let co_terms: Vec<Option<&str>> = if host.needs_research_terms() {
        RESEARCH_TERMS.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for co_term in co_terms {
        let host_query = HostQuery {
            keyword: &query.keyword,
            co_term,
            language: &limits.language,
            min_stars: limits.min_stars,
            page_size: limits.page_size,
        };
        let mut cursor: Option<String> = None;
        for _ in 0..limits.page_cap.max(1) {
            let page = host.search_page(&host_query, cursor.as_deref())?;
            for mut repo in page.repos {
                let language_ok = limits.language.is_empty()
                    || repo.primary_language.eq_ignore_ascii_case(&limits.language);
                if repo.stars < limits.min_stars || !language_ok || !seen.insert(repo.key()) {
                    continue;
                }
                repo.discipline_ids = vec![query.discipline_id.clone()];
                repo.found_by_queries = vec![query.keyword.clone()];
                out.push(repo);
            }
            match page.next_cursor {
                Some(next) => cursor = Some(next),
                None => break,
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: ResearchVerdict,
    pub paper_links: Vec<String>,
    pub record: ClassificationRecord,
}

const RESEARCH_REMINDER: &str =
    "Answer strictly in the format:\nRESEARCH: YES or NO\nLINKS: [link, ...]";

/// Judges from the README whether the repository hosts code for a research paper
/// in the discipline. A missing README short-circuits to `not_research`.
pub fn classify_repository(
    gateway: &Gateway,
    repo: &RepoRef,
    readme: Option<&str>,
    discipline_keyword: &str,
    log: &mut Vec<LLMExchange>,
) -> Result<Classification> {
    let Some(readme) = readme.filter(|r| !r.trim().is_empty()) else {
        return Ok(Classification {
            verdict: ResearchVerdict::NotResearch,
            paper_links: Vec::new(),
            record: ClassificationRecord {
                reason: Some("no README".into()),
                ..Default::default()
            },
        });
    };
    let prompt = render_within(
        TemplateId::CrawlFilter,
        &templates::bindings([("keyword", discipline_keyword), ("readme", readme)]),
        "readme",
        gateway.max_prompt_chars(),
    )?;
    let first_call = log.len();
    let parsed = gateway.complete_parsed(
        TemplateId::CrawlFilter,
        &prompt,
        ModelRole::General,
        RESEARCH_REMINDER,
        log,
        |reply| {
            let verdict = parse_yes_no(reply, "RESEARCH")?;
            let links = parse_path_list(reply, "LINKS").unwrap_or_default();
            Ok((verdict, links))
        },
    );
    let mut record = ClassificationRecord {
        model: Some(gateway.model_name(ModelRole::General).to_string()),
        prompt_hashes: log[first_call..].iter().map(|e| e.prompt_hash.clone()).collect(),
        recorded_at: log[first_call..].last().map(|e| e.recorded_at.clone()),
        reason: None,
    };
    match parsed {
        Ok((YesNo::Yes, links)) => Ok(Classification {
            verdict: ResearchVerdict::Research,
            // paper links from PapersWithCode come from the host API instead
            paper_links: if repo.host == Host::Paperswithcode {
                repo.paper_links.clone()
            } else {
                links
            },
            record,
        }),
        Ok((YesNo::No, _)) => Ok(Classification {
            verdict: ResearchVerdict::NotResearch,
            paper_links: Vec::new(),
            record,
        }),
        Err(Error::MalformedReply(reason)) => {
            warn!(repo = %repo.key(), %reason, "README classification unparseable; marking not_research");
            record.reason = Some(format!("malformed reply: {reason}"));
            Ok(Classification {
                verdict: ResearchVerdict::NotResearch,
                paper_links: Vec::new(),
                record,
            })
        }
        Err(e) => Err(e),
    }
}

fn merge_unique(into: &mut Vec<String>, from: &[String]) {
    for item in from {
        if !into.contains(item) {
            into.push(item.clone());
        }
    }
}

/// One record per canonical key in order of first appearance, with excluded keys removed.
/// Scalar fields come from the highest-starred duplicate; list fields are unioned.
pub fn dedupe_and_exclude(repos: Vec<RepoRef>, exclusions: &ExclusionList) -> Vec<RepoRef> {
    let mut order: Vec<String> = Vec::new();
    let mut merged: BTreeMap<String, RepoRef> = BTreeMap::new();
    for repo in repos {
        let key = repo.key();
        if exclusions.contains(&key) {
            continue;
        }
        match merged.get_mut(&key) {
            None => {
                order.push(key.clone());
                merged.insert(key, repo);
            }
            Some(existing) => {
                let mut disciplines = existing.discipline_ids.clone();
                merge_unique(&mut disciplines, &repo.discipline_ids);
                let mut queries = existing.found_by_queries.clone();
                merge_unique(&mut queries, &repo.found_by_queries);
                let mut links = existing.paper_links.clone();
                merge_unique(&mut links, &repo.paper_links);
                if repo.stars > existing.stars {
                    *existing = repo;
                }
                existing.discipline_ids = disciplines;
                existing.found_by_queries = queries;
                existing.paper_links = links;
            }
        }
    }
    order
        .into_iter()
        .filter_map(|key| merged.remove(&key))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::llm::{GatewayConfig, Mode, ScriptedProvider};
    use std::sync::Arc;

    pub(crate) fn repo(owner: &str, name: &str, stars: u64, discipline: &str, query: &str) -> RepoRef {
        RepoRef {
            host: Host::Github,
            owner: owner.into(),
            name: name.into(),
            url: format!("https://github.com/{owner}/{name}"),
            stars,
            primary_language: "Python".into(),
            discipline_ids: vec![discipline.into()],
            found_by_queries: vec![query.into()],
            research_verdict: ResearchVerdict::Unjudged,
            paper_links: vec![],
            license_id: None,
            classification: None,
        }
    }

    fn gateway(reply: impl Fn(&str) -> String + Send + Sync + 'static) -> (Gateway, Arc<ScriptedProvider>) {
        let provider = Arc::new(ScriptedProvider::from_text(reply));
        let gw = Gateway::new(
            GatewayConfig {
                mode: Mode::Live,
                ..GatewayConfig::default()
            },
            Some(provider.clone()),
            None,
        )
        .unwrap();
        (gw, provider)
    }

    #[test]
    fn dedupe_merges_and_keeps_first_position() {
        let a = repo("Lab", "A", 5, "bio", "genomics");
        let dup = repo("lab", "a", 50, "chem", "catalysis");
        let b = repo("x", "B", 1, "bio", "genomics");
        let out = dedupe_and_exclude(vec![a, dup, b.clone()], &ExclusionList::default());
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].key(), "lab/a");
        assert_eq!(out[0].stars, 50);
        assert_eq!(out[0].discipline_ids, ["bio", "chem"]);
        assert_eq!(out[0].found_by_queries, ["genomics", "catalysis"]);
        assert_eq!(out[1], b);

        let mut ex = ExclusionList::default();
        ex.insert("X/b", "benchmark").unwrap();
        let out = dedupe_and_exclude(out, &ex);
        assert_eq!(out.len(), 1);
        assert!(dedupe_and_exclude(vec![], &ex).is_empty());
    }

    #[test]
    fn exclusion_file_parsing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("benchmarks.txt");
        std::fs::write(&path, "# benchmark repos\nFoo/Bar\n\nhttps://github.com/baz/Qux\n").unwrap();
        let list = ExclusionList::from_file(&path).unwrap();
        assert!(list.contains("foo/bar"));
        assert!(list.contains("baz/qux"));
        assert_eq!(list.source_labels["foo/bar"], "benchmarks");
        std::fs::write(&path, "no-slash\n").unwrap();
        assert!(matches!(ExclusionList::from_file(&path), Err(Error::Config(_))));
    }

    #[test]
    fn expansion_keeps_seeds_and_dedupes() {
        let (gw, _) = gateway(|_| "KEYWORDS: [neuroimaging, Neuroscience, neuroplasticity, neuroinformatics]".into());
        let d = Discipline {
            id: "neuro".into(),
            display_name: "Neuroscience".into(),
            seed_keywords: vec!["neuroscience".into()],
        };
        let mut log = Vec::new();
        let kws = expand_keywords(&gw, &d, &mut log).unwrap();
        assert_eq!(kws, ["neuroscience", "neuroimaging", "neuroplasticity", "neuroinformatics"]);
        assert_eq!(log.len(), 1);
        assert!(log[0].rendered_prompt.contains("Seed keywords: neuroscience"));
    }

    #[test]
    fn expansion_requires_seeds() {
        let (gw, provider) = gateway(|_| String::new());
        let d = Discipline {
            id: "empty".into(),
            display_name: "Empty".into(),
            seed_keywords: vec![" ".into()],
        };
        assert!(matches!(expand_keywords(&gw, &d, &mut Vec::new()), Err(Error::EmptySeeds(_))));
        assert_eq!(provider.call_count(), 0);
    }

    #[test]
    fn expansion_falls_back_to_seeds_on_garbage() {
        let (gw, provider) = gateway(|_| "sure!".into());
        let d = Discipline {
            id: "bio".into(),
            display_name: "Bioinformatics".into(),
            seed_keywords: vec!["bioinformatics".into()],
        };
        assert_eq!(expand_keywords(&gw, &d, &mut Vec::new()).unwrap(), ["bioinformatics"]);
        assert_eq!(provider.call_count(), 2);
    }

    #[test]
    fn classification_paths() {
        let (gw, provider) = gateway(|prompt| {
            if prompt.contains("genomics paper") {
                "RESEARCH: YES\nLINKS: [https://arxiv.org/abs/0000.00000]".into()
            } else if prompt.contains("awesome list") {
                "RESEARCH: NO\nLINKS:".into()
            } else {
                "unsure".into()
            }
        });
        let r = repo("lab", "gen", 20, "bio", "genomics");
        let mut log = Vec::new();
        let c = classify_repository(&gw, &r, Some("Code for our genomics paper."), "Bioinformatics", &mut log).unwrap();
        assert_eq!(c.verdict, ResearchVerdict::Research);
        assert_eq!(c.paper_links, ["https://arxiv.org/abs/0000.00000"]);
        assert_eq!(c.record.prompt_hashes.len(), 1);

        let c = classify_repository(&gw, &r, Some("An awesome list"), "Bioinformatics", &mut log).unwrap();
        assert_eq!((c.verdict, c.paper_links.len()), (ResearchVerdict::NotResearch, 0));

        let before = provider.call_count();
        let c = classify_repository(&gw, &r, None, "Bioinformatics", &mut log).unwrap();
        assert_eq!(c.verdict, ResearchVerdict::NotResearch);
        assert_eq!(provider.call_count(), before);

        let c = classify_repository(&gw, &r, Some("something else"), "Bioinformatics", &mut log).unwrap();
        assert_eq!(c.verdict, ResearchVerdict::NotResearch);
        assert!(c.record.reason.unwrap().starts_with("malformed"));
        assert_eq!(provider.call_count(), before + 2);
    }

    #[test]
    fn paperswithcode_links_come_from_the_host() {
        let (gw, _) = gateway(|_| "RESEARCH: YES\nLINKS: [https://example.org/other]".into());
        let mut r = repo("lab", "net", 20, "bio", "genomics");
        r.host = Host::Paperswithcode;
        r.paper_links = vec!["https://arxiv.org/abs/2101.00001".into()];
        let c = classify_repository(&gw, &r, Some("readme"), "Bioinformatics", &mut Vec::new()).unwrap();
        assert_eq!(c.paper_links, ["https://arxiv.org/abs/2101.00001"]);
    }

    struct PagedHost {
        repos: Vec<RepoRef>,
    }

    impl CodeHost for PagedHost {
        fn host(&self) -> Host {
            Host::Github
        }

        fn search_page(&self, query: &HostQuery<'_>, cursor: Option<&str>) -> Result<SearchPage> {
            let hits: Vec<_> = self
                .repos
                .iter()
                .filter(|r| r.found_by_queries[0] == query.keyword && query.co_term == Some("doi"))
                .cloned()
                .collect();
            let start: usize = cursor.map(|c| c.parse().unwrap()).unwrap_or(0);
            let end = (start + query.page_size).min(hits.len());
            Ok(SearchPage {
                repos: hits[start..end].to_vec(),
                next_cursor: (end < hits.len()).then(|| end.to_string()),
            })
        }

        fn readme(&self, _: &RepoRef) -> Result<Option<String>> {
            Ok(None)
        }
    }

    #[test]
    fn search_filters_and_paginates() {
        let mut js = repo("a", "js", 100, "", "genomics");
        js.primary_language = "JavaScript".into();
        let host = PagedHost {
            repos: vec![
                repo("a", "ok1", 10, "", "genomics"),
                repo("a", "few", 9, "", "genomics"),
                js,
                repo("a", "ok2", 300, "", "genomics"),
                repo("a", "other", 300, "", "proteomics"),
            ],
        };
        let limits = SearchLimits {
            page_size: 2,
            ..SearchLimits::default()
        };
        let q = SearchQuery {
            discipline_id: "bio".into(),
            keyword: "genomics".into(),
            host: Host::Github,
        };
        let found = search_host(&host, &q, &limits).unwrap();
        let keys: Vec<_> = found.iter().map(RepoRef::key).collect();
        assert_eq!(keys, ["a/ok1", "a/ok2"]);
        assert!(found.iter().all(|r| r.discipline_ids == ["bio"]));

        let capped = search_host(&host, &q, &SearchLimits { page_size: 2, page_cap: 1, ..SearchLimits::default() }).unwrap();
        assert_eq!(capped.len(), 1);

        let none = SearchQuery { keyword: "astronomy".into(), ..q };
        assert!(search_host(&host, &none, &limits).unwrap().is_empty());
    }
}
