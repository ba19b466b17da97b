package shapes.model;

import shapes.core.Canvas;

public class Rect extends AbstractShape {
    protected final int width;
    protected final int height;

    public Rect(int x, int y, int width, int height) {
        super(x, y);
        this.width = width; // NOAA 1
        this.height = height; // NOAA 1
    }

    @Override
    public void draw(Canvas canvas) {
        int right = x + width - 1; // NOL 1, NOAA 2
        int bottom = y + height - 1; // NOL 1, NOAA 2
        hline(canvas, x, right, y); // NOMI 1, NOAA 2
        hline(canvas, x, right, bottom); // NOMI 1, NOAA 1
        vline(canvas, x, y, bottom); // NOMI 1, NOAA 2
        vline(canvas, right, y, bottom); // NOMI 1, NOAA 1
    }

    public int area() {
        return width * height; // NOAA 2
    }

    @Override
    public String name() {
        return "rect";
    }
}
