package shapes.model;

import shapes.core.Canvas;

public class RoundRect extends Rect {
    public RoundRect(int x, int y, int width, int height) {
        super(x, y, width, height);
        withMark('o'); // NOMI 1
    }

    @Override
    public void draw(Canvas canvas) {
        int right = x + width - 1; // NOL 1, NOAA 2
        int bottom = y + height - 1; // NOL 1, NOAA 2
        hline(canvas, x + 1, right - 1, y); // NOMI 1, NOAA 2
        hline(canvas, x + 1, right - 1, bottom); // NOMI 1, NOAA 1
        vline(canvas, x, y + 1, bottom - 1); // NOMI 1, NOAA 2
        vline(canvas, right, y + 1, bottom - 1); // NOMI 1, NOAA 1
    }

    @Override
    public String name() {
        return "round rect";
    }
}
