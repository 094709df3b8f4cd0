//! End-to-end reproduction runs printing every checked claim.

use serde_json::{json, Value};

use dimgap::collapse::{cdim, cols, verify_schedule, SearchOptions};
use dimgap::generators::{dunce_hat, theorem_a_instance, theorem_b_instance};
use dimgap::homology::{ldim, LerayOptions};
use dimgap::nerve::mes_collapse_schedule;
use dimgap::{collapse::FaceQuery, Error};

use crate::{Outcome, Status};

struct Claims {
    lines: Vec<(String, Option<bool>)>,
}

impl Claims {
    fn new() -> Self {
        Claims { lines: Vec::new() }
    }

    fn check(&mut self, what: String, holds: bool) -> bool {
        self.lines.push((what, Some(holds)));
        holds
    }

    fn note(&mut self, what: String) {
        self.lines.push((what, None));
    }

    fn all_hold(&self) -> bool {
        self.lines.iter().all(|(_, h)| *h != Some(false))
    }

    fn finish(self, summary: String, mut js: Value) -> Outcome {
        let mut text = String::new();
        for (what, holds) in &self.lines {
            let tag = match holds {
                Some(true) => "[ok]  ",
                Some(false) => "[FAIL]",
                None => "[n/a] ",
            };
            text += &format!("{tag} {what}\n");
        }
        text += &summary;
        text.push('\n');
        js["claims"] = self.lines.iter().map(|(w, h)| json!({"claim": w, "holds": h})).collect();
        js["summary"] = json!(summary);
        let status = if self.all_hold() { Status::Ok } else { Status::False };
        Outcome { status, text, json: js }
    }
}

pub fn theorem_a(d: usize) -> Result<Outcome, Error> {
    let family = theorem_a_instance(d)?;
    let mut claims = Claims::new();
    let n = family.len();
    claims.check(format!("family has {n} sets, each of size at most d = {d}"), family.max_set_size() <= d);
    let faces = family.face_count();
    claims.note(format!("nerve has {n} vertices and {faces} nonempty faces"));
    let ms = mes_collapse_schedule(&family, Some(d))?;
    let verdict = verify_schedule(&family, &ms.schedule);
    let verified = claims.check(
        format!("schedule of {} steps is a valid {d}-collapse of the nerve to the void", ms.schedule.len()),
        verdict.is_valid(),
    );
    claims.note(format!(
        "non-representability in dimension {} rests on a non-embedding theorem and is not decided here",
        2 * d as isize - 2
    ));
    let summary = if verified {
        format!("d={d}: nerve on {n} vertices is {d}-collapsible (verified schedule)")
    } else {
        format!("d={d}: schedule verification failed: {verdict:?}")
    };
    let js =
        json!({"d": d, "sets": n, "nerve_faces": faces.to_string(), "steps": ms.schedule.len(), "verdict": verdict});
    Ok(claims.finish(summary, js))
}

pub fn theorem_b(d: usize, options: &LerayOptions) -> Result<Outcome, Error> {
    let hat = dunce_hat()?;
    let k = theorem_b_instance(d)?;
    let mut claims = Claims::new();
    let hat_cols = cols(&hat)?;
    let hat_ldim = ldim(&hat, options)?.ldim;
    claims.check(format!("dunce hat: ldim = {hat_ldim}, cols = {hat_cols}"), hat_ldim == 2 && hat_cols == 3);

    let k_cols = cols(&k)?;
    claims.check(format!("cols(K) = {k_cols} computed directly, expected 3d = {}", 3 * d), k_cols == 3 * d);
    claims
        .check(format!("cols is additive over the join: {d} x {hat_cols} = {}", d * hat_cols), d * hat_cols == k_cols);

    let joined_ldim = d * hat_ldim;
    claims.check(
        format!("ldim is additive over the join: {d} x {hat_ldim} = {joined_ldim}, expected 2d = {}", 2 * d),
        joined_ldim == 2 * d,
    );
    let swept = if k.num_vertices() <= options.max_vertices {
        let direct = ldim(&k, options)?;
        claims.check(
            format!(
                "ldim(K) = {} by a sweep over all {} induced subcomplexes",
                direct.ldim,
                (1u64 << k.num_vertices()) - 1
            ),
            direct.ldim == joined_ldim,
        );
        Some(direct.ldim)
    } else {
        claims.note(format!(
            "full sweep skipped: {} vertices exceed --max-vertices {}",
            k.num_vertices(),
            options.max_vertices
        ));
        None
    };
    let ldim_value = swept.unwrap_or(joined_ldim);

    let c = cdim(&k, &SearchOptions::default())?;
    let cdim_text =
        if c.lower() == c.upper() { c.lower().to_string() } else { format!("[{},{}]", c.lower(), c.upper()) };
    claims.check(format!("cdim(K) = {cdim_text}, at least cols(K) = {k_cols}"), c.lower() >= k_cols);
    claims.check(
        format!("gap: ldim(K) = {ldim_value} < cdim(K), so K is not {ldim_value}-collapsible"),
        ldim_value < c.lower(),
    );

    let consistent = claims.all_hold() && c.lower() == c.upper() && c.lower() == 3 * d && ldim_value == 2 * d;
    let summary = format!(
        "ldim={ldim_value} cols={k_cols} cdim={cdim_text} — {} with ldim(K)=2d, cols=3d at d={d}",
        if consistent { "consistent" } else { "INCONSISTENT" }
    );
    let js = json!({
        "d": d,
        "ldim": ldim_value,
        "ldim_swept": swept.is_some(),
        "cols": k_cols,
        "cdim": {"lower": c.lower(), "upper": c.upper()},
        "consistent": consistent,
    });
    let mut out = claims.finish(summary, js);
    if !consistent {
        out.status = Status::False;
    }
    Ok(out)
}
