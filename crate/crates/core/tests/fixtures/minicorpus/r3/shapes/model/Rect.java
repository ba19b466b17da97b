package shapes.model;

import shapes.core.Canvas;
import shapes.core.Scalable;
import shapes.core.Shape;
import shapes.util.Geometry;

public class Rect extends AbstractShape implements Scalable {
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
    public Shape scale(int factor) {
        int w = Geometry.clamp(width * factor, 1, 80); // NOL 1, NOMI 1, NOAA 1
        return new Rect(x, y, w, height * factor); // NOAA 3
    }

    @Override
    public String name() {
        return "rect";
    }
}
