//! Thin blocking JSON-over-HTTP helper shared by the provider and code-host clients.

use std::time::Duration;

use serde::Serialize;

#[derive(Debug, Clone)]
pub struct HttpResponse {
    pub status: u16,
    pub retry_after: Option<u64>,
    pub body: String,
}

#[derive(Debug, Clone)]
pub struct HttpClient {
    agent: ureq::Agent,
}

impl HttpClient {
    pub fn new(timeout: Duration) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .timeout_global(Some(timeout))
            .user_agent("autosdt/0.1")
            .build()
            .into();
        Self { agent }
    }

    /// Transport failures come back as `Err(description)`; HTTP error statuses are `Ok`.
    pub fn post_json<B: Serialize>(
        &self,
        url: &str,
        headers: &[(&str, String)],
        body: &B,
    ) -> Result<HttpResponse, String> {
        let mut req = self.agent.post(url);
        for (k, v) in headers {
            req = req.header(*k, v.as_str());
        }
        let resp = req.send_json(body).map_err(|e| e.to_string())?;
        Self::collect(resp)
    }

    pub fn get(
        &self,
        url: &str,
        query: &[(&str, String)],
        headers: &[(&str, String)],
    ) -> Result<HttpResponse, String> {
        let mut req = self.agent.get(url);
        for (k, v) in query {
            req = req.query(*k, v.as_str());
        }
        for (k, v) in headers {
            req = req.header(*k, v.as_str());
        }
        let resp = req.call().map_err(|e| e.to_string())?;
        Self::collect(resp)
    }

    fn collect(mut resp: ureq::http::Response<ureq::Body>) -> Result<HttpResponse, String> {
        let status = resp.status().as_u16();
        let retry_after = resp
            .headers()
            .get("retry-after")
            .and_then(|v| v.to_str().ok())
            .and_then(|v| v.trim().parse().ok());
        let body = resp
            .body_mut()
            .read_to_string()
            .map_err(|e| e.to_string())?;
        Ok(HttpResponse {
            status,
            retry_after,
            body,
        })
    }
}
