//! Plain-text triangle layout: one line per row, each row shifted by half a
//! cell so entries sit between the two entries they were summed from.

use steinhaus::Triangle;

pub fn render_triangle(triangle: &Triangle) -> String {
    let width = triangle
        .rows()
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let pitch = width + 1;
    triangle
        .rows()
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            format!("{}{}", " ".repeat(r * pitch / 2), cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
